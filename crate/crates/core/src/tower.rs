//! The extension `F_q ⊂ F_{q^m}`, the field trace, and `F_q`-bases of the
//! extension together with their trace-dual bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::{Error, Result};

struct TowerInner {
    base: Field,
    ext: Field,
    degree: usize,
    embed: Vec<u32>,
    project: HashMap<u32, u32>,
    power_coords: OnceLock<Arc<Vec<u32>>>,
}

/// A field extension `F_q ⊂ F_{q^m}` with a fixed embedding of the base.
#[derive(Clone)]
pub struct Tower(Arc<TowerInner>);

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.base == other.0.base && self.0.ext == other.0.ext)
    }
}

impl Eq for Tower {}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊂ {:?}", self.0.base, self.0.ext)
    }
}

impl Tower {
    /// Builds the tower. When the base is not a prime field it is embedded by
    /// sending its generator to the smallest root of its modulus in `ext`.
    pub fn new(base: Field, ext: Field) -> Result<Self> {
        if base.characteristic() != ext.characteristic() || !ext.degree().is_multiple_of(base.degree()) {
            return Err(Error::InvalidParameters(format!("{base} is not a subfield of {ext}")));
        }
        let degree = (ext.degree() / base.degree()) as usize;
        let embed: Vec<u32> = if base.degree() == 1 {
            (0..base.order()).collect()
        } else {
            let root = ext
                .elements()
                .find(|&beta| eval_prime_poly(&ext, base.modulus(), beta) == 0)
                .ok_or_else(|| Error::InvalidParameters("base modulus has no root in the extension".into()))?;
            (0..base.order())
                .map(|v| eval_prime_poly(&ext, &base.digits(v), root))
                .collect()
        };
        let project = embed.iter().enumerate().map(|(b, &x)| (x, b as u32)).collect();
        Ok(Tower(Arc::new(TowerInner { base, ext, degree, embed, project, power_coords: OnceLock::new() })))
    }

    /// `F_p ⊂ F_{p^m}` with default moduli.
    pub fn prime_base(p: u32, m: u32) -> Result<Self> {
        Self::new(Field::prime(p)?, Field::new(p, m, None)?)
    }

    pub fn base(&self) -> &Field {
        &self.0.base
    }

    pub fn ext(&self) -> &Field {
        &self.0.ext
    }

    /// Extension degree `m`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn embed(&self, a: u32) -> u32 {
        self.0.embed[a as usize]
    }

    /// The base-field preimage of `x`, if `x` lies in the base.
    pub fn project(&self, x: u32) -> Option<u32> {
        self.0.project.get(&x).copied()
    }

    pub fn frobenius(&self, x: u32) -> u32 {
        self.0.ext.pow(x, self.0.base.order() as u64)
    }

    /// `Tr(x) = x + x^q + ... + x^{q^{m-1}}`, returned as a base element.
    pub fn trace(&self, x: u32) -> u32 {
        let ext = &self.0.ext;
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.0.degree {
            acc = ext.add(acc, y);
            y = self.frobenius(y);
        }
        self.project(acc).expect("trace lies in the base field")
    }

    /// Field trace on a bound element.
    pub fn field_trace(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != self.ext() {
            return Err(Error::FieldMismatch);
        }
        self.base().element(self.trace(x.value()))
    }

    /// `{1, x, ..., x^{m-1}}`, always an `F_q`-basis since `x` generates the
    /// extension over the prime field.
    pub fn power_basis(&self) -> ExtensionBasis {
        let ext = self.ext();
        let x = ext.generator_x();
        let elements = (0..self.degree()).map(|i| ext.pow(x, i as u64)).collect();
        ExtensionBasis::new(self, elements).expect("power basis is independent")
    }

    /// Coordinates with respect to the power basis.
    pub(crate) fn coordinates(&self, x: u32) -> Vec<u32> {
        if self.base().degree() == 1 {
            // The encoding digits are the power-basis coordinates.
            return self.ext().digits(x);
        }
        let m = self.degree();
        let table = self.0.power_coords.get_or_init(|| self.power_basis().coords.clone());
        table[x as usize * m..(x as usize + 1) * m].to_vec()
    }
}

fn eval_prime_poly(field: &Field, coeffs: &[u32], x: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

/// An ordered `F_q`-basis `γ_1..γ_m` of `F_{q^m}`.
#[derive(Clone)]
pub struct ExtensionBasis {
    tower: Tower,
    elements: Vec<u32>,
    // coords[x * m .. (x + 1) * m] are the coordinates of x.
    coords: Arc<Vec<u32>>,
}

impl PartialEq for ExtensionBasis {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.elements == other.elements
    }
}

impl Eq for ExtensionBasis {}

impl fmt::Debug for ExtensionBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Basis{:?}", self.elements)
    }
}

impl ExtensionBasis {
    /// Validates independence by tabulating all `q^m` combinations.
    pub fn new(tower: &Tower, elements: Vec<u32>) -> Result<Self> {
        let m = tower.degree();
        if elements.len() != m {
            return Err(Error::InvalidBasis(format!("expected {m} elements, got {}", elements.len())));
        }
        let ext = tower.ext();
        if let Some(&x) = elements.iter().find(|&&x| x >= ext.order()) {
            return Err(Error::OutOfRange { value: x, order: ext.order() });
        }
        let q = tower.base().order();
        let total = ext.order() as usize;
        let mut coords = vec![u32::MAX; total * m];
        for t in 0..total {
            let c = crate::linalg::index_to_vector(q, m, t as u64);
            let value = c
                .iter()
                .zip(&elements)
                .fold(0, |acc, (&ci, &g)| ext.add(acc, ext.mul(tower.embed(ci), g)));
            let slot = &mut coords[value as usize * m..(value as usize + 1) * m];
            if slot[0] != u32::MAX {
                return Err(Error::InvalidBasis(format!("{elements:?} is linearly dependent over F_q")));
            }
            slot.copy_from_slice(&c);
        }
        Ok(ExtensionBasis { tower: tower.clone(), elements, coords: Arc::new(coords) })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Coordinates `c` with `x = Σ c_j γ_j`.
    pub fn coordinates(&self, x: u32) -> &[u32] {
        let m = self.elements.len();
        &self.coords[x as usize * m..(x as usize + 1) * m]
    }

    pub fn combine(&self, coeffs: &[u32]) -> u32 {
        let ext = self.tower.ext();
        coeffs
            .iter()
            .zip(&self.elements)
            .fold(0, |acc, (&c, &g)| ext.add(acc, ext.mul(self.tower.embed(c), g)))
    }

    /// The trace-dual basis `Γ*` with `Tr(γ_i γ*_j) = δ_ij`.
    pub fn dual(&self) -> ExtensionBasis {
        let m = self.elements.len();
        let ext = self.tower.ext();
        let base = self.tower.base();
        let mut t = Matrix::zeros(base, m, m);
        for i in 0..m {
            for k in 0..m {
                t.set(i, k, self.tower.trace(ext.mul(self.elements[i], self.elements[k])));
            }
        }
        // T is symmetric, so the coefficient matrix of Γ* is T^{-1}.
        let c = t.inverse().expect("trace form is nondegenerate");
        let elements = (0..m).map(|j| self.combine(c.row(j))).collect();
        ExtensionBasis::new(&self.tower, elements).expect("dual basis is a basis")
    }
}
