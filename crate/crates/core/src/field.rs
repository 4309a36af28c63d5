//! Finite fields `F_{p^e}` with an explicit monic irreducible modulus.
//!
//! Elements are canonical integers in `[0, p^e)`: the base-`p` digits of the
//! integer are the coefficients (low degree first) of the polynomial
//! representative modulo the field's modulus. Multiplication goes through
//! log/exp tables built from a primitive element found at construction.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// Default moduli for `p ∈ {2, 3, 5}` and `2 ≤ e ≤ 6` (Conway polynomials),
/// coefficients low degree first.
fn default_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, e) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (3, 5) => &[1, 2, 0, 0, 0, 1],
        (3, 6) => &[2, 2, 1, 0, 2, 0, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        (5, 5) => &[3, 4, 0, 0, 0, 1],
        (5, 6) => &[2, 0, 1, 4, 1, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, coefficients low degree first, no trailing zeros.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

/// Remainder of `a` divided by `b` over F_p. `b` must be nonzero.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        let shift = dr - db;
        for (i, &c) in b.iter().enumerate() {
            let sub = (factor as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut x = t;
            for _ in 0..d {
                divisor.push((x % p as u64) as u32);
                x /= p as u64;
            }
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

struct FieldInner {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    order: u32,
    // exp has length 2*(order-1) so log sums never need a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

/// A finite field `F_{p^e}`: the `FieldSpec` of the data model.
///
/// Cloning is cheap (shared tables). Two fields compare equal iff their
/// `(p, e, modulus)` triples are identical.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.characteristic().hash(state);
        self.modulus().hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}[{:?}]", self.0.p, self.0.e, self.0.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}", self.0.order)
        }
    }
}

impl Field {
    /// Builds `F_{p^e}`. A missing modulus selects the built-in default for
    /// `(p, e)`; for `e = 1` the modulus is `x`.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(e).filter(|&o| o <= MAX_FIELD_ORDER as u64);
        let Some(order) = order else {
            return Err(Error::InvalidField(format!(
                "field order {p}^{e} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        };
        let order = order as u32;
        let modulus = match modulus {
            Some(m) => m,
            None if e == 1 => vec![0, 1],
            None => default_modulus(p, e).ok_or_else(|| {
                Error::InvalidField(format!("no default modulus for p = {p}, e = {e}"))
            })?,
        };
        if modulus.len() != e as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients, got {}",
                e + 1,
                modulus.len()
            )));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficient {c} is not below {p}")));
        }
        if modulus[e as usize] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }

        let mut inner = FieldInner {
            p,
            e,
            modulus,
            order,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        if p != 2 && e > 1 && order <= 256 {
            let mut table = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] = inner.digit_add(a, b) as u16;
                }
            }
            inner.add_table = Some(table);
        }
        inner.build_log_tables();
        Ok(Field(Arc::new(inner)))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            a ^ b
        } else if f.e == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if let Some(t) = &f.add_table {
            t[(a * f.order + b) as usize] as u32
        } else {
            f.digit_add(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            a
        } else if f.e == 1 {
            if a == 0 {
                0
            } else {
                f.p - a
            }
        } else {
            let mut out = 0;
            let mut place = 1;
            let mut x = a;
            for _ in 0..f.e {
                let d = x % f.p;
                out += ((f.p - d) % f.p) * place;
                place *= f.p;
                x /= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let f = &*self.0;
        let l = f.log[a as usize];
        Some(f.exp[((f.order - 1 - l) % (f.order - 1)) as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.0;
        let l = (f.log[a as usize] as u64 * (k % (f.order as u64 - 1))) % (f.order as u64 - 1);
        f.exp[l as usize]
    }

    /// Base-`p` digits of an element, i.e. its polynomial coefficients.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.e as usize);
        let mut x = a;
        for _ in 0..self.0.e {
            out.push(x % self.0.p);
            x /= self.0.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.0.p + d)
    }

    /// Wraps a raw value, checking the range.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.0.order {
            return Err(Error::OutOfRange { value, order: self.0.order });
        }
        Ok(FieldElement { value, field: self.clone() })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { value: 0, field: self.clone() }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { value: 1, field: self.clone() }
    }

    /// The class of `x` (value `p`) when `e > 1`.
    pub fn generator_x(&self) -> u32 {
        if self.0.e == 1 {
            1
        } else {
            self.0.p
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.order
    }
}

impl FieldInner {
    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.e {
            out += ((x % self.p + y % self.p) % self.p) * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        out
    }

    /// Polynomial product modulo the field modulus, on encoded values.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let e = self.e as usize;
        let da: Vec<u64> = (0..e).map(|i| (a as u64 / p.pow(i as u32)) % p).collect();
        let db: Vec<u64> = (0..e).map(|i| (b as u64 / p.pow(i as u32)) % p).collect();
        let mut prod = vec![0u64; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // x^e = -(modulus[0] + ... + modulus[e-1] x^{e-1})
            for i in 0..e {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
            }
        }
        prod[..e].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
    }

    fn build_log_tables(&mut self) {
        let n = self.order - 1;
        for g in 2..self.order.max(3) {
            if g >= self.order {
                break;
            }
            let mut exp = Vec::with_capacity(n as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for i in 0..n {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = self.poly_mul(x, g);
            }
            if primitive && x == 1 {
                self.install(exp);
                return;
            }
        }
        // F_2: the only nonzero element is 1.
        self.install(vec![1]);
    }

    fn install(&mut self, exp: Vec<u32>) {
        let mut log = vec![0u32; self.order as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let mut doubled = exp.clone();
        doubled.extend_from_slice(&exp);
        self.exp = doubled;
        self.log = log;
    }
}

/// An element bound to its field. Mixed-field arithmetic is rejected.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    value: u32,
    field: Field,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field)
    }
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement { value: self.field.add(self.value, other.value), field: self.field.clone() })
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement { value: self.field.sub(self.value, other.value), field: self.field.clone() })
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement { value: self.field.mul(self.value, other.value), field: self.field.clone() })
    }

    pub fn inv(&self) -> Option<FieldElement> {
        self.field.inv(self.value).map(|value| FieldElement { value, field: self.field.clone() })
    }

    pub fn pow(&self, k: u64) -> FieldElement {
        FieldElement { value: self.field.pow(self.value, k), field: self.field.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}
