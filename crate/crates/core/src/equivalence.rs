//! Code equivalence under `C ↦ A C B` (and `C ↦ A C^t B` when `n = m`).

use rayon::prelude::*;

use crate::code::MatrixCode;
use crate::linalg::{self, gl_order, general_linear_group, Matrix};
use crate::{Limits, Result};

/// Matrices with `C_2 = A · C_1' · B`, where `C_1'` is `C_1` or its transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub a: Matrix,
    pub b: Matrix,
    pub transposed: bool,
}

impl EquivalenceWitness {
    /// Applies the witness to `code`.
    pub fn apply(&self, code: &MatrixCode) -> Result<MatrixCode> {
        let source = if self.transposed { code.transpose() } else { code.clone() };
        source.transform(&self.a, &self.b)
    }
}

/// Number of `(A, B)` candidates an exhaustive search visits.
pub fn search_size(c: &MatrixCode) -> u128 {
    let q = c.field().order();
    let per_side = gl_order(q, c.n()).saturating_mul(gl_order(q, c.m()));
    if c.n() == c.m() {
        per_side.saturating_mul(2)
    } else {
        per_side
    }
}

/// Searches for a witness of `C_1 ≃ C_2`.
///
/// Cheap invariants (dimension, then rank distribution when affordable) are
/// compared first. The search then runs over the untransposed case, then the
/// transposed one, `A` and `B` in enumeration order; the first hit is returned,
/// so the result does not depend on thread scheduling.
pub fn is_equivalent(c1: &MatrixCode, c2: &MatrixCode, limits: &Limits) -> Result<Option<EquivalenceWitness>> {
    c1.check_same_space(c2)?;
    if c1.dim() != c2.dim() {
        return Ok(None);
    }
    if c1.size() <= limits.codewords && c1.rank_distribution(limits)? != c2.rank_distribution(limits)? {
        return Ok(None);
    }
    Limits::check("matrix pairs", search_size(c1), limits.pairs)?;
    let field = c1.field();
    let (n, m) = (c1.n(), c1.m());
    let gl_n = general_linear_group(field, n);
    let gl_m = general_linear_group(field, m);
    let target_basis = c2.basis_flat();
    let target_pivots = linalg::pivots_of(target_basis);
    let in_target = |x: &Matrix| {
        let mut w = x.as_flat().to_vec();
        linalg::reduce(field, target_basis, &target_pivots, &mut w);
        w.iter().all(|&v| v == 0)
    };
    let orientations: &[bool] = if n == m { &[false, true] } else { &[false] };
    for &transposed in orientations {
        let source = if transposed { c1.transpose() } else { c1.clone() };
        let gens = source.basis_matrices();
        let hit = gl_n.par_iter().find_map_first(|a| {
            let left: Vec<Matrix> = gens.iter().map(|g| a.mul_unchecked(g)).collect();
            gl_m.iter()
                .find(|b| left.iter().all(|ag| in_target(&ag.mul_unchecked(b))))
                .map(|b| EquivalenceWitness { a: a.clone(), b: b.clone(), transposed })
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}
