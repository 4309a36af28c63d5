//! `F_{q^m}`-linear vector rank-metric codes and their matrix expansions.

use std::fmt;

use crate::code::MatrixCode;
use crate::linalg::{self, Matrix};
use crate::tower::{ExtensionBasis, Tower};
use crate::{Error, Limits, Result};

/// An `F_{q^m}`-linear code `C ⊆ F_{q^m}^n`, generators in RREF over `F_{q^m}`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorCode {
    tower: Tower,
    n: usize,
    basis: Vec<Vec<u32>>,
}

impl fmt::Debug for VectorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorCode(n={}, k={}, {:?}, basis {:?})", self.n, self.dim(), self.tower, self.basis)
    }
}

/// `F_q`-rank of the entries of `v`.
pub fn rank_weight(tower: &Tower, v: &[u32]) -> usize {
    let m = tower.degree();
    let mut data: Vec<u32> = v.iter().flat_map(|&x| tower.coordinates(x)).collect();
    linalg::rank_in_place(tower.base(), &mut data, v.len(), m)
}

impl VectorCode {
    pub fn new(tower: &Tower, n: usize, generators: &[Vec<u32>]) -> Result<Self> {
        let ext = tower.ext();
        for g in generators {
            if g.len() != n {
                return Err(Error::ShapeMismatch(format!("generator of length {}, code length {n}", g.len())));
            }
            if let Some(&x) = g.iter().find(|&&x| x >= ext.order()) {
                return Err(Error::OutOfRange { value: x, order: ext.order() });
            }
        }
        Ok(VectorCode { tower: tower.clone(), n, basis: linalg::span_basis(ext, generators, n) })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Dimension `k` over `F_{q^m}`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        linalg::reduce(self.tower.ext(), &self.basis, &linalg::pivots_of(&self.basis), &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Orthogonal complement under the standard inner product.
    pub fn dual(&self) -> VectorCode {
        let flat = self.basis.concat();
        let basis = linalg::null_space(self.tower.ext(), &flat, self.basis.len(), self.n);
        VectorCode { tower: self.tower.clone(), n: self.n, basis }
    }

    /// `α C B` for `α ∈ F_{q^m}^*` and `B ∈ GL_n(F_q)`.
    pub fn transform(&self, alpha: u32, b: &Matrix) -> Result<VectorCode> {
        let ext = self.tower.ext();
        if alpha == 0 || alpha >= ext.order() {
            return Err(Error::InvalidParameters(format!("scalar {alpha} is not a unit of {ext}")));
        }
        if b.field() != self.tower.base() {
            return Err(Error::FieldMismatch);
        }
        if (b.rows(), b.cols()) != (self.n, self.n) {
            return Err(Error::ShapeMismatch(format!("B must be {0}x{0}", self.n)));
        }
        if !b.is_invertible() {
            return Err(Error::Singular("B"));
        }
        let images: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|v| {
                (0..self.n)
                    .map(|j| {
                        let s = (0..self.n)
                            .fold(0, |acc, i| ext.add(acc, ext.mul(v[i], self.tower.embed(b.get(i, j)))));
                        ext.mul(alpha, s)
                    })
                    .collect()
            })
            .collect();
        VectorCode::new(&self.tower, self.n, &images)
    }

    /// The matrix code `Γ(C)`: row `i` of `Γ(v)` holds the coordinates of `v_i`.
    pub fn expand(&self, gamma: &ExtensionBasis) -> Result<MatrixCode> {
        if gamma.tower() != &self.tower {
            return Err(Error::FieldMismatch);
        }
        let ext = self.tower.ext();
        let m = self.tower.degree();
        let spanning: Vec<Vec<u32>> = self
            .basis
            .iter()
            .flat_map(|b| {
                gamma.elements().iter().map(move |&g| {
                    b.iter().flat_map(|&x| gamma.coordinates(ext.mul(g, x)).to_vec()).collect::<Vec<u32>>()
                })
            })
            .collect();
        Ok(MatrixCode::from_flat(self.tower.base(), self.n, m, &spanning))
    }

    /// Minimum rank weight over the `q^{mk} − 1` nonzero codewords.
    pub fn min_distance(&self, limits: &Limits) -> Result<usize> {
        if self.basis.is_empty() {
            return Err(Error::ZeroCode);
        }
        let ext = self.tower.ext();
        let qm = ext.order();
        let total = (qm as u128).saturating_pow(self.dim() as u32);
        Limits::check("codewords", total, limits.codewords)?;
        let best = (1..total as u64)
            .map(|t| {
                let c = linalg::index_to_vector(qm, self.dim(), t);
                let mut w = vec![0u32; self.n];
                for (&ci, b) in c.iter().zip(&self.basis) {
                    for (wj, &bj) in w.iter_mut().zip(b) {
                        *wj = ext.add(*wj, ext.mul(ci, bj));
                    }
                }
                rank_weight(&self.tower, &w)
            })
            .min()
            .unwrap_or(0);
        Ok(best)
    }

    /// The Gabidulin code with rows `(g_1^{q^i}, …, g_n^{q^i})`, `i < k`.
    ///
    /// `points` defaults to the first `n` elements of the power basis.
    pub fn gabidulin(tower: &Tower, n: usize, k: usize, points: Option<&[u32]>) -> Result<VectorCode> {
        let m = tower.degree();
        if k > n || n > m {
            return Err(Error::InvalidParameters(format!("need k <= n <= m, got k={k}, n={n}, m={m}")));
        }
        let g: Vec<u32> = match points {
            Some(p) => p.to_vec(),
            None => tower.power_basis().elements()[..n].to_vec(),
        };
        if g.len() != n {
            return Err(Error::InvalidParameters(format!("expected {n} evaluation points, got {}", g.len())));
        }
        if let Some(&x) = g.iter().find(|&&x| x >= tower.ext().order()) {
            return Err(Error::OutOfRange { value: x, order: tower.ext().order() });
        }
        if rank_weight(tower, &g) != n {
            return Err(Error::InvalidParameters(format!("evaluation points {g:?} are F_q-dependent")));
        }
        let mut rows = Vec::with_capacity(k);
        let mut row = g;
        for _ in 0..k {
            let next = row.iter().map(|&x| tower.frobenius(x)).collect();
            rows.push(std::mem::replace(&mut row, next));
        }
        VectorCode::new(tower, n, &rows)
    }
}
