//! Subspaces of `F_q^k` in canonical RREF form, lattice operations, and
//! exhaustive enumeration.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::{Error, Result};

/// A subspace of `F_q^k`, stored as its RREF basis (no zero rows).
///
/// Equal subspaces have identical bases, so the flattened basis is a
/// canonical key. Ordering is by dimension, then by key.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<u32>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "> ⊆ F^{}", self.ambient)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.basis.len().cmp(&other.basis.len()))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl Subspace {
    /// The span of arbitrary vectors of length `ambient`.
    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch { expected: ambient, got: v.len() });
            }
            if let Some(&x) = v.iter().find(|&&x| x >= field.order()) {
                return Err(Error::OutOfRange { value: x, order: field.order() });
            }
        }
        Ok(Self::span_unchecked(field, ambient, vectors))
    }

    pub(crate) fn span_unchecked(field: &Field, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Subspace { field: field.clone(), ambient, basis: linalg::span_basis(field, vectors, ambient) }
    }

    /// Wraps a basis already in RREF without recomputing it.
    pub(crate) fn from_rref(field: &Field, ambient: usize, basis: Vec<Vec<u32>>) -> Self {
        Subspace { field: field.clone(), ambient, basis }
    }

    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field: field.clone(), ambient, basis }
    }

    /// `⟨e_i : i ∈ indices⟩` (zero-based).
    pub fn coordinate(field: &Field, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<u32>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self::span_unchecked(field, ambient, &vectors)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Canonical lookup key: the flattened RREF basis.
    pub fn key(&self) -> Vec<u32> {
        self.basis.concat()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_flat_unchecked(&self.field, self.basis.len(), self.ambient, self.key())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { expected: self.ambient, got: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Self::span_unchecked(&self.field, self.ambient, &vectors))
    }

    /// Intersection as `(A^⊥ + B^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.orth().sum(&other.orth())?.orth())
    }

    /// Orthogonal complement under the standard dot product.
    pub fn orth(&self) -> Subspace {
        let basis = linalg::null_space(&self.field, &self.key(), self.basis.len(), self.ambient);
        Subspace { field: self.field.clone(), ambient: self.ambient, basis }
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w = v.to_vec();
        linalg::reduce(&self.field, &self.basis, &linalg::pivots_of(&self.basis), &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Image under `v ↦ v·g` for a square matrix `g`.
    pub fn image(&self, g: &Matrix) -> Subspace {
        let rows = self.basis_matrix().mul_unchecked(g);
        Self::span_unchecked(&self.field, self.ambient, &rows.to_rows())
    }
}

/// Column space of a matrix, as a subspace of `F_q^rows`.
pub fn column_space(m: &Matrix) -> Subspace {
    row_space(&m.transpose())
}

/// Row space of a matrix, as a subspace of `F_q^cols`.
pub fn row_space(m: &Matrix) -> Subspace {
    Subspace::span_unchecked(m.field(), m.cols(), &m.to_rows())
}

/// Gaussian binomial `[k choose d]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(q: u32, k: usize, d: usize) -> u128 {
    if d > k {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..d {
        let a = q.saturating_pow((k - i) as u32).saturating_sub(1);
        let b = q.saturating_pow((i + 1) as u32) - 1;
        num = match num.checked_mul(a) {
            Some(x) => x,
            None => return u128::MAX,
        };
        den *= b;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Total number of subspaces of `F_q^k`, or of dimension `d` only.
pub fn count_subspaces(q: u32, k: usize, dim_filter: Option<usize>) -> u128 {
    match dim_filter {
        Some(d) => gaussian_binomial(q, k, d),
        None => (0..=k).fold(0u128, |acc, d| acc.saturating_add(gaussian_binomial(q, k, d))),
    }
}

/// Every subspace of `F_q^k` (optionally of one dimension), sorted by
/// `(dimension, key)`. Refuses when the count exceeds `guard`.
pub fn enumerate_subspaces(field: &Field, k: usize, dim_filter: Option<usize>, guard: u128) -> Result<Vec<Subspace>> {
    let count = count_subspaces(field.order(), k, dim_filter);
    if count > guard {
        return Err(Error::GuardExceeded { what: "subspaces", count, limit: guard });
    }
    let dims: Vec<usize> = match dim_filter {
        Some(d) if d > k => Vec::new(),
        Some(d) => vec![d],
        None => (0..=k).collect(),
    };
    let mut out = Vec::with_capacity(count as usize);
    for d in dims {
        let start = out.len();
        for pivots in combinations(k, d) {
            push_rref_family(field, k, &pivots, &mut out);
        }
        out[start..].sort();
    }
    Ok(out)
}

/// All `d`-subsets of `0..k` in lexicographic order.
fn combinations(k: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, d, &mut Vec::new(), &mut out);
    out
}

/// Pushes every RREF basis with the given pivot columns.
fn push_rref_family(field: &Field, k: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    // Free positions: row r, column c > pivots[r] with c not a pivot.
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| ((p + 1)..k).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let q = field.order() as u64;
    let total = q.pow(free.len() as u32);
    for t in 0..total {
        let mut basis: Vec<Vec<u32>> = pivots
            .iter()
            .map(|&p| {
                let mut v = vec![0u32; k];
                v[p] = 1;
                v
            })
            .collect();
        let mut x = t;
        for &(r, c) in free.iter().rev() {
            basis[r][c] = (x % q) as u32;
            x /= q;
        }
        out.push(Subspace::from_rref(field, k, basis));
    }
}
