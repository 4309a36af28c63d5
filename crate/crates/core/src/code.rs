//! Matrix rank-metric codes: `F_q`-linear subspaces of `n × m` matrices.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::subspace::{column_space, Subspace};
use crate::{Error, Limits, Result};

/// Which side of the matrices a subspace constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Column,
    Row,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Column => "column",
            Side::Row => "row",
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Column => Side::Row,
            Side::Row => Side::Column,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A linear code `C ⊆ Mat_{n×m}(F_q)`.
///
/// The generator matrix (codewords flattened row-major to length `nm`) is
/// kept in RREF, so two values are equal iff they are the same code.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixCode {
    field: Field,
    n: usize,
    m: usize,
    basis: Vec<Vec<u32>>,
}

impl fmt::Debug for MatrixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixCode({}x{} over {}, dim {})", self.n, self.m, self.field, self.dim())
    }
}

impl PartialOrd for MatrixCode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MatrixCode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.m, self.basis.len(), &self.basis).cmp(&(other.n, other.m, other.basis.len(), &other.basis))
    }
}

impl MatrixCode {
    /// The span of `mats`; dependent generators are dropped.
    pub fn from_generators(field: &Field, n: usize, m: usize, mats: &[Matrix]) -> Result<Self> {
        for g in mats {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if (g.rows(), g.cols()) != (n, m) {
                return Err(Error::ShapeMismatch(format!(
                    "generator is {}x{}, code is {n}x{m}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let vectors: Vec<Vec<u32>> = mats.iter().map(|g| g.as_flat().to_vec()).collect();
        Ok(Self::from_flat(field, n, m, &vectors))
    }

    pub(crate) fn from_flat(field: &Field, n: usize, m: usize, vectors: &[Vec<u32>]) -> Self {
        MatrixCode { field: field.clone(), n, m, basis: linalg::span_basis(field, vectors, n * m) }
    }

    pub fn zero(field: &Field, n: usize, m: usize) -> Self {
        MatrixCode { field: field.clone(), n, m, basis: Vec::new() }
    }

    /// The whole matrix space.
    pub fn full(field: &Field, n: usize, m: usize) -> Self {
        Self::from_flat(field, n, m, Subspace::full(field, n * m).basis())
    }

    /// `Mat(X, side)`: all matrices whose column (row) space lies in `X`.
    pub fn supported_space(field: &Field, n: usize, m: usize, x: &Subspace, side: Side) -> Result<Self> {
        let expected = match side {
            Side::Column => n,
            Side::Row => m,
        };
        if x.ambient_dim() != expected {
            return Err(Error::AmbientMismatch { expected, got: x.ambient_dim() });
        }
        let mut gens = Vec::new();
        for v in x.basis() {
            match side {
                Side::Column => {
                    for c in 0..m {
                        let mut g = vec![0u32; n * m];
                        for (i, &vi) in v.iter().enumerate() {
                            g[i * m + c] = vi;
                        }
                        gens.push(g);
                    }
                }
                Side::Row => {
                    for r in 0..n {
                        let mut g = vec![0u32; n * m];
                        g[r * m..(r + 1) * m].copy_from_slice(v);
                        gens.push(g);
                    }
                }
            }
        }
        Ok(Self::from_flat(field, n, m, &gens))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical generator rows, each a flattened `n × m` matrix.
    pub fn basis_flat(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.basis
            .iter()
            .map(|v| Matrix::from_flat_unchecked(&self.field, self.n, self.m, v.clone()))
            .collect()
    }

    /// Number of codewords, `q^k`.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128).saturating_pow(self.dim() as u32)
    }

    pub fn contains(&self, mat: &Matrix) -> bool {
        if mat.field() != &self.field || (mat.rows(), mat.cols()) != (self.n, self.m) {
            return false;
        }
        self.contains_flat(mat.as_flat())
    }

    pub(crate) fn contains_flat(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        linalg::reduce(&self.field, &self.basis, &linalg::pivots_of(&self.basis), &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub(crate) fn check_same_space(&self, other: &MatrixCode) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} code vs {}x{} code",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }

    /// Fails with [`Error::Orientation`] unless `n ≤ m`.
    pub fn check_orientation(&self) -> Result<()> {
        if self.n > self.m {
            Err(Error::Orientation { n: self.n, m: self.m })
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &MatrixCode) -> Result<MatrixCode> {
        self.check_same_space(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Self::from_flat(&self.field, self.n, self.m, &v))
    }

    /// `dim(C ∩ D)` via `dim C + dim D − dim(C + D)`.
    pub fn intersection_dim(&self, other: &MatrixCode) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }

    /// Whether `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &MatrixCode) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self.basis.iter().all(|v| other.contains_flat(v)))
    }

    /// `C^⊥` under `⟨M, N⟩ = Tr(M N^t) = Σ M_ij N_ij`.
    pub fn dual(&self) -> MatrixCode {
        let len = self.n * self.m;
        let flat: Vec<u32> = self.basis.concat();
        let basis = linalg::null_space(&self.field, &flat, self.basis.len(), len);
        MatrixCode { field: self.field.clone(), n: self.n, m: self.m, basis }
    }

    /// The transposed code `{M^t}`, of shape `m × n`.
    pub fn transpose(&self) -> MatrixCode {
        let vectors: Vec<Vec<u32>> = self
            .basis_matrices()
            .iter()
            .map(|g| g.transpose().into_flat())
            .collect();
        Self::from_flat(&self.field, self.m, self.n, &vectors)
    }

    /// `A C B` for `A ∈ GL_n`, `B ∈ GL_m`.
    pub fn transform(&self, a: &Matrix, b: &Matrix) -> Result<MatrixCode> {
        if a.field() != &self.field || b.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if (a.rows(), a.cols()) != (self.n, self.n) || (b.rows(), b.cols()) != (self.m, self.m) {
            return Err(Error::ShapeMismatch("transform needs A in GL_n and B in GL_m".into()));
        }
        if !a.is_invertible() {
            return Err(Error::Singular("A"));
        }
        if !b.is_invertible() {
            return Err(Error::Singular("B"));
        }
        Ok(self.transform_unchecked(a, b))
    }

    pub(crate) fn transform_unchecked(&self, a: &Matrix, b: &Matrix) -> MatrixCode {
        let vectors: Vec<Vec<u32>> = self
            .basis_matrices()
            .iter()
            .map(|g| a.mul_unchecked(g).mul_unchecked(b).into_flat())
            .collect();
        Self::from_flat(&self.field, self.n, self.m, &vectors)
    }

    /// Parity-check rows for `X`: a basis of `X^⊥`.
    fn constraint_products(&self, x: &Subspace, side: Side) -> Result<(Vec<u32>, usize)> {
        let expected = match side {
            Side::Column => self.n,
            Side::Row => self.m,
        };
        if x.ambient_dim() != expected {
            return Err(Error::AmbientMismatch { expected, got: x.ambient_dim() });
        }
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let h = x.orth().basis_matrix();
        let r = h.rows();
        // Row i of the result is the flattened constraint image of basis element i:
        // H·M (r×m) for columns, M·H^t (n×r) for rows.
        let ht = h.transpose();
        let width = match side {
            Side::Column => r * self.m,
            Side::Row => self.n * r,
        };
        let mut out = Vec::with_capacity(self.dim() * width);
        for g in self.basis_matrices() {
            let img = match side {
                Side::Column => h.mul_unchecked(&g),
                Side::Row => g.mul_unchecked(&ht),
            };
            out.extend_from_slice(img.as_flat());
        }
        Ok((out, width))
    }

    /// `C(X, side)`: codewords whose column (row) space lies in `X`.
    pub fn supported_subcode(&self, x: &Subspace, side: Side) -> Result<MatrixCode> {
        let (products, width) = self.constraint_products(x, side)?;
        let k = self.dim();
        // λ with Σ λ_i R_i = 0, i.e. the null space of R^t.
        let mut rt = vec![0u32; width * k];
        for i in 0..k {
            for j in 0..width {
                rt[j * k + i] = products[i * width + j];
            }
        }
        let kernel = linalg::null_space(&self.field, &rt, width, k);
        let vectors: Vec<Vec<u32>> = kernel.iter().map(|lambda| self.combine(lambda)).collect();
        Ok(Self::from_flat(&self.field, self.n, self.m, &vectors))
    }

    /// `dim C(X, side)` without materializing the subcode.
    pub fn supported_dim(&self, x: &Subspace, side: Side) -> Result<usize> {
        let (mut products, width) = self.constraint_products(x, side)?;
        let k = self.dim();
        Ok(k - linalg::rank_in_place(&self.field, &mut products, k, width))
    }

    /// `Σ_i λ_i B_i` for a coefficient vector over the canonical basis.
    pub fn combine(&self, lambda: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.n * self.m];
        for (&l, b) in lambda.iter().zip(&self.basis) {
            if l == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(b) {
                if x != 0 {
                    *o = f.add(*o, f.mul(l, x));
                }
            }
        }
        out
    }

    /// The codeword whose coefficient vector has lexicographic index `t`.
    pub fn codeword(&self, t: u64) -> Matrix {
        let coeffs = linalg::index_to_vector(self.field.order(), self.dim(), t);
        Matrix::from_flat_unchecked(&self.field, self.n, self.m, self.combine(&coeffs))
    }

    /// Sum of the column spaces of the codewords, a subspace of `F_q^n`.
    pub fn support(&self) -> Subspace {
        let vectors: Vec<Vec<u32>> = self
            .basis_matrices()
            .iter()
            .flat_map(|g| column_space(g).basis().to_vec())
            .collect();
        Subspace::span_unchecked(&self.field, self.n, &vectors)
    }

    /// Census of codeword ranks (exhaustive over all `q^k` codewords).
    pub fn rank_distribution(&self, limits: &Limits) -> Result<BTreeMap<usize, u128>> {
        let hist = self.rank_histogram(limits)?;
        Ok(hist.into_iter().enumerate().filter(|&(_, c)| c > 0).collect())
    }

    fn rank_histogram(&self, limits: &Limits) -> Result<Vec<u128>> {
        let total = self.size();
        Limits::check("codewords", total, limits.codewords)?;
        let max_rank = self.n.min(self.m);
        let (n, m) = (self.n, self.m);
        let hist = par_chunks(total)
            .map(|(lo, hi)| {
                let mut h = vec![0u128; max_rank + 1];
                let mut scratch = vec![0u32; n * m];
                self.for_each_codeword(lo, hi, |c| {
                    scratch.copy_from_slice(c);
                    h[linalg::rank_in_place(&self.field, &mut scratch, n, m)] += 1;
                });
                h
            })
            .reduce(
                || vec![0u128; max_rank + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(hist)
    }

    /// Minimum rank of a nonzero codeword.
    pub fn min_distance(&self, limits: &Limits) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let hist = self.rank_histogram(limits)?;
        Ok((1..hist.len()).find(|&r| hist[r] > 0).expect("nonzero code has a nonzero codeword"))
    }

    /// Maximum rank of a codeword (0 for the zero code).
    pub fn maxrk(&self, limits: &Limits) -> Result<usize> {
        let hist = self.rank_histogram(limits)?;
        Ok((0..hist.len()).rev().find(|&r| hist[r] > 0).unwrap_or(0))
    }

    /// Whether `dim C = m (n − d + 1)`. Requires `n ≤ m`.
    pub fn is_mrd(&self, limits: &Limits) -> Result<bool> {
        self.check_orientation()?;
        let d = self.min_distance(limits)?;
        Ok(self.dim() == self.m * (self.n - d + 1))
    }

    /// Whether `dim C = m · maxrk(C)`. Requires `n ≤ m`.
    pub fn is_optimal_anticode(&self, limits: &Limits) -> Result<bool> {
        self.check_orientation()?;
        Ok(self.dim() == self.m * self.maxrk(limits)?)
    }

    /// Max over all matrices of the rank distance to the code.
    pub fn covering_radius(&self, limits: &Limits) -> Result<usize> {
        let nm = self.n * self.m;
        let q = self.field.order();
        let total = (q as u128).saturating_pow(nm as u32);
        Limits::check("ambient matrices", total, limits.covering)?;
        let codewords: Vec<Vec<u32>> = {
            let mut all = Vec::with_capacity(self.size() as usize);
            self.for_each_codeword(0, self.size() as u64, |c| all.push(c.to_vec()));
            all
        };
        // One representative per coset: vectors vanishing on the pivot positions.
        let pivots = linalg::pivots_of(&self.basis);
        let free: Vec<usize> = (0..nm).filter(|p| !pivots.contains(p)).collect();
        let reps = (q as u64).pow(free.len() as u32);
        let (n, m) = (self.n, self.m);
        let f = &self.field;
        let radius = par_chunks(reps as u128)
            .map(|(lo, hi)| {
                let mut best = 0usize;
                let mut rep = vec![0u32; nm];
                let mut diff = vec![0u32; nm];
                for t in lo..hi {
                    let digits = linalg::index_to_vector(q, free.len(), t);
                    for (&pos, &d) in free.iter().zip(&digits) {
                        rep[pos] = d;
                    }
                    let mut nearest = usize::MAX;
                    for c in &codewords {
                        for ((d, &r), &x) in diff.iter_mut().zip(&rep).zip(c) {
                            *d = f.sub(r, x);
                        }
                        let rk = linalg::rank_in_place(f, &mut diff, n, m);
                        nearest = nearest.min(rk);
                        if nearest <= best {
                            break;
                        }
                    }
                    best = best.max(nearest);
                }
                best
            })
            .max()
            .unwrap_or(0);
        Ok(radius)
    }

    /// Calls `f` on codewords with lexicographic coefficient index in `lo..hi`.
    pub(crate) fn for_each_codeword(&self, lo: u64, hi: u64, mut f: impl FnMut(&[u32])) {
        let k = self.dim();
        let q = self.field.order();
        let field = &self.field;
        if lo >= hi {
            return;
        }
        let mut coeffs = linalg::index_to_vector(q, k, lo);
        let mut word = self.combine(&coeffs);
        for t in lo..hi {
            f(&word);
            if t + 1 == hi {
                break;
            }
            // Odometer step on the coefficients, updating the codeword by deltas.
            for i in (0..k).rev() {
                let old = coeffs[i];
                let new = if old + 1 == q { 0 } else { old + 1 };
                coeffs[i] = new;
                let delta = field.sub(new, old);
                for (w, &b) in word.iter_mut().zip(&self.basis[i]) {
                    if b != 0 {
                        *w = field.add(*w, field.mul(delta, b));
                    }
                }
                if new != 0 {
                    break;
                }
            }
        }
    }
}

/// Splits `0..total` into contiguous chunks for parallel scans.
pub(crate) fn par_chunks(total: u128) -> impl ParallelIterator<Item = (u64, u64)> {
    let total = total as u64;
    let chunk = 4096u64;
    let count = total.div_ceil(chunk);
    (0..count).into_par_iter().map(move |c| (c * chunk, ((c + 1) * chunk).min(total)))
}
