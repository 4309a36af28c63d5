//! Dense matrices over a finite field and Gaussian elimination.

use std::fmt;

use crate::field::Field;
use crate::{Error, Result};

/// Row-reduces a row-major `rows × cols` block in place and returns the pivot
/// columns. Rows past `pivots.len()` are zero afterwards.
pub(crate) fn rref_in_place(field: &Field, data: &mut [u32], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(data[r * cols + c]).expect("pivot is nonzero");
        if inv != 1 {
            for j in c..cols {
                data[r * cols + j] = field.mul(data[r * cols + j], inv);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            let neg = field.neg(factor);
            for j in c..cols {
                let v = data[r * cols + j];
                if v != 0 {
                    data[i * cols + j] = field.add(data[i * cols + j], field.mul(neg, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a row-major block; the slice is used as scratch space.
pub(crate) fn rank_in_place(field: &Field, data: &mut [u32], rows: usize, cols: usize) -> usize {
    if field.order() == 2 && cols <= 64 {
        return binary_rank(data, rows, cols);
    }
    // Forward elimination only.
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(data[r * cols + c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            let f = field.neg(field.mul(factor, inv));
            for j in c..cols {
                let v = data[r * cols + j];
                if v != 0 {
                    data[i * cols + j] = field.add(data[i * cols + j], field.mul(f, v));
                }
            }
        }
        r += 1;
    }
    r
}

fn binary_rank(data: &[u32], rows: usize, cols: usize) -> usize {
    let mut packed: Vec<u64> = (0..rows)
        .map(|i| (0..cols).fold(0u64, |acc, j| acc | ((data[i * cols + j] as u64) << j)))
        .collect();
    let mut rank = 0;
    for i in 0..packed.len() {
        let row = packed[i];
        if row == 0 {
            continue;
        }
        rank += 1;
        let low = row & row.wrapping_neg();
        for other in packed.iter_mut().skip(i + 1) {
            if *other & low != 0 {
                *other ^= row;
            }
        }
    }
    rank
}

/// Basis (RREF rows) of `{x : A x = 0}` for a row-major `rows × cols` matrix.
pub(crate) fn null_space(field: &Field, data: &[u32], rows: usize, cols: usize) -> Vec<Vec<u32>> {
    let mut work = data.to_vec();
    let pivots = rref_in_place(field, &mut work, rows, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(work[r * cols + free]);
        }
        basis.push(v);
    }
    // The vectors above are already independent; canonicalize their span.
    let k = basis.len();
    let mut flat: Vec<u32> = basis.into_iter().flatten().collect();
    let piv = rref_in_place(field, &mut flat, k, cols);
    flat.chunks(cols).take(piv.len()).map(<[u32]>::to_vec).collect()
}

/// Canonical RREF basis of the span of `vectors` (zero rows dropped).
pub(crate) fn span_basis(field: &Field, vectors: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
    let mut flat: Vec<u32> = vectors.iter().flat_map(|v| v.iter().copied()).collect();
    let pivots = rref_in_place(field, &mut flat, vectors.len(), len);
    if len == 0 {
        return Vec::new();
    }
    flat.chunks(len).take(pivots.len()).map(<[u32]>::to_vec).collect()
}

/// Pivot column of each row of an RREF basis.
pub(crate) fn pivots_of(basis: &[Vec<u32>]) -> Vec<usize> {
    basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
        .collect()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` lies in the span.
pub(crate) fn reduce(field: &Field, basis: &[Vec<u32>], pivots: &[usize], v: &mut [u32]) {
    for (row, &pc) in basis.iter().zip(pivots) {
        let c = v[pc];
        if c == 0 {
            continue;
        }
        let neg = field.neg(c);
        for (x, &b) in v.iter_mut().zip(row) {
            if b != 0 {
                *x = field.add(*x, field.mul(neg, b));
            }
        }
    }
}

/// An `n × m` matrix over a finite field (`MatrixFq`).
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.cols.max(1)).enumerate().take(self.rows) {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data, checking shape and entry range.
    pub fn from_flat(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(idx) = data.iter().position(|&x| x >= field.order()) {
            return Err(Error::EntryOutOfRange {
                row: idx / cols.max(1),
                col: idx % cols.max(1),
                value: data[idx],
                order: field.order(),
            });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::from_flat(field, rows.len(), cols, rows.concat())
    }

    pub(crate) fn from_flat_unchecked(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_flat(&self) -> &[u32] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<u32> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let mut data = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.data[k * other.cols + j];
                    if b != 0 {
                        let cell = &mut data[i * other.cols + j];
                        *cell = f.add(*cell, f.mul(a, b));
                    }
                }
            }
        }
        Matrix { field: f.clone(), rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("matrix sum of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form with zero rows kept at the bottom.
    pub fn rref(&self) -> Matrix {
        let mut data = self.data.clone();
        rref_in_place(&self.field, &mut data, self.rows, self.cols);
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        rank_in_place(&self.field, &mut data, self.rows, self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = vec![0u32; n * 2 * n];
        for i in 0..n {
            aug[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug[i * 2 * n + n + i] = 1;
        }
        let pivots = rref_in_place(&self.field, &mut aug, n, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let data = (0..n).flat_map(|i| aug[i * 2 * n + n..(i + 1) * 2 * n].to_vec()).collect();
        Some(Matrix { field: self.field.clone(), rows: n, cols: n, data })
    }
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n − q^i)`, saturating.
pub fn gl_order(q: u32, n: usize) -> u128 {
    let qn = (q as u128).saturating_pow(n as u32);
    (0..n).fold(1u128, |acc, i| acc.saturating_mul(qn - (q as u128).pow(i as u32)))
}

/// Every invertible `n × n` matrix, in increasing order of the row-major entry
/// sequence. Callers are responsible for guarding the size.
pub fn general_linear_group(field: &Field, n: usize) -> Vec<Matrix> {
    let q = field.order();
    let vectors: Vec<Vec<u32>> = all_vectors(q, n);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    extend_gl(field, n, &vectors, &mut chosen, &mut out);
    out
}

fn extend_gl(field: &Field, n: usize, vectors: &[Vec<u32>], chosen: &mut Vec<usize>, out: &mut Vec<Matrix>) {
    if chosen.len() == n {
        let data = chosen.iter().flat_map(|&i| vectors[i].iter().copied()).collect();
        out.push(Matrix::from_flat_unchecked(field, n, n, data));
        return;
    }
    for idx in 0..vectors.len() {
        let mut rows: Vec<u32> = chosen.iter().flat_map(|&i| vectors[i].iter().copied()).collect();
        rows.extend_from_slice(&vectors[idx]);
        if rank_in_place(field, &mut rows, chosen.len() + 1, n) == chosen.len() + 1 {
            chosen.push(idx);
            extend_gl(field, n, vectors, chosen, out);
            chosen.pop();
        }
    }
}

/// All vectors of `F_q^len` in lexicographic order (first coordinate most significant).
pub(crate) fn all_vectors(q: u32, len: usize) -> Vec<Vec<u32>> {
    let total = (q as usize).pow(len as u32);
    (0..total).map(|t| index_to_vector(q, len, t as u64)).collect()
}

/// Lexicographic decoding: the last coordinate varies fastest.
pub(crate) fn index_to_vector(q: u32, len: usize, mut t: u64) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for slot in v.iter_mut().rev() {
        *slot = (t % q as u64) as u32;
        t /= q as u64;
    }
    v
}
