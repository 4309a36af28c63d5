//! Generalized rank weights and support weights.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{MatrixCode, Side};
use crate::lattice::Lattice;
use crate::linalg;
use crate::qpm::{QPolymatroid, Rational};
use crate::subspace::{count_subspaces, enumerate_subspaces};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightMethod {
    Anticode,
    RankFunction,
}

impl WeightMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightMethod::Anticode => "anticode",
            WeightMethod::RankFunction => "rank-function",
        }
    }
}

/// `a_1..a_k`, optionally with `cs_1..cs_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub a: Vec<usize>,
    pub cs: Option<Vec<usize>>,
    pub method: WeightMethod,
}

/// Every optimal anticode of `Mat_{n×m}(F_q)`: the spaces `Mat(J, c)`, and also
/// `Mat(K, r)` when `n = m`. Deduplicated and sorted.
pub fn optimal_anticodes(field: &crate::Field, n: usize, m: usize, limits: &Limits) -> Result<Vec<MatrixCode>> {
    if n > m {
        return Err(Error::Orientation { n, m });
    }
    let mut set = BTreeSet::new();
    for j in Lattice::of(field, n, limits.subspaces)?.subspaces() {
        set.insert(MatrixCode::supported_space(field, n, m, j, Side::Column)?);
    }
    if n == m {
        for k in Lattice::of(field, m, limits.subspaces)?.subspaces() {
            set.insert(MatrixCode::supported_space(field, n, m, k, Side::Row)?);
        }
    }
    Ok(set.into_iter().collect())
}

fn check_weights_input(code: &MatrixCode) -> Result<()> {
    code.check_orientation()?;
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    Ok(())
}

/// `(dim A, dim(C ∩ A))` for every optimal anticode `A`, in canonical order.
fn anticode_intersections(code: &MatrixCode, limits: &Limits) -> Result<Vec<(MatrixCode, usize)>> {
    let anticodes = optimal_anticodes(code.field(), code.n(), code.m(), limits)?;
    anticodes
        .into_par_iter()
        .map(|a| {
            let d = code.intersection_dim(&a)?;
            Ok((a, d))
        })
        .collect()
}

/// `a_i = min{dim A : A optimal anticode, dim(C ∩ A) ≥ i} / m`.
pub fn gen_weights_anticode(code: &MatrixCode, limits: &Limits) -> Result<WeightProfile> {
    check_weights_input(code)?;
    let inter = anticode_intersections(code, limits)?;
    let a = (1..=code.dim())
        .map(|i| {
            inter
                .iter()
                .filter(|(_, d)| *d >= i)
                .map(|(a, _)| a.dim() / code.m())
                .min()
                .expect("the full space contains C")
        })
        .collect();
    Ok(WeightProfile { a, cs: None, method: WeightMethod::Anticode })
}

/// `a_i` from the rank function: `min{n − dim J : dim C − m ρ_c(J) ≥ i}`, and
/// for `n = m` the smaller of the column and row values.
pub fn gen_weights_qpm(code: &MatrixCode, limits: &Limits) -> Result<WeightProfile> {
    check_weights_input(code)?;
    let (n, m, k) = (code.n(), code.m(), code.dim());
    let col = QPolymatroid::from_code(code, Side::Column, limits)?;
    let mut a = weights_from_table(&col, k, m, n);
    if n == m {
        let row = QPolymatroid::from_code(code, Side::Row, limits)?;
        for (x, y) in a.iter_mut().zip(weights_from_table(&row, k, n, m)) {
            *x = (*x).min(y);
        }
    }
    Ok(WeightProfile { a, cs: None, method: WeightMethod::RankFunction })
}

fn weights_from_table(p: &QPolymatroid, k: usize, denom: usize, ground: usize) -> Vec<usize> {
    let k_r = Rational::from_integer(k as i64);
    let d = Rational::from_integer(denom as i64);
    (1..=k)
        .map(|i| {
            let i_r = Rational::from_integer(i as i64);
            p.entries()
                .filter(|&(_, v)| k_r - d * v >= i_r)
                .map(|(j, _)| ground - j.dim())
                .min()
                .expect("the zero subspace has ρ = 0")
        })
        .collect()
}

/// Support weights `cs_i`: exhaustive over `i`-dimensional subcodes when the
/// subcode count fits the subspace guard, otherwise via
/// `cs_i = min{dim S : dim C(S, c) ≥ i}`.
pub fn support_weights(code: &MatrixCode, limits: &Limits) -> Result<Vec<usize>> {
    match support_weights_exhaustive(code, limits) {
        Err(Error::GuardExceeded { .. }) => support_weights_lattice(code, limits),
        other => other,
    }
}

/// Exhaustive minimum of `dim supp(D)` over `i`-dimensional subcodes `D`.
pub fn support_weights_exhaustive(code: &MatrixCode, limits: &Limits) -> Result<Vec<usize>> {
    let k = code.dim();
    let q = code.field().order();
    let total = count_subspaces(q, k, None);
    Limits::check("subcodes", total, limits.subspaces)?;
    let (n, m) = (code.n(), code.m());
    let field = code.field();
    (1..=k)
        .map(|i| {
            let subs = enumerate_subspaces(field, k, Some(i), limits.subspaces)?;
            let best = subs
                .par_iter()
                .map(|s| {
                    // supp(D) = column space of [D_1 | D_2 | ... | D_i].
                    let words: Vec<Vec<u32>> = s.basis().iter().map(|l| code.combine(l)).collect();
                    let width = i * m;
                    let mut wide = vec![0u32; n * width];
                    for (t, w) in words.iter().enumerate() {
                        for r in 0..n {
                            wide[r * width + t * m..r * width + (t + 1) * m].copy_from_slice(&w[r * m..(r + 1) * m]);
                        }
                    }
                    linalg::rank_in_place(field, &mut wide, n, width)
                })
                .min()
                .expect("at least one subcode");
            Ok(best)
        })
        .collect()
}

/// `cs_i = min{dim S : S ⊆ F_q^n, dim C(S, c) ≥ i}`.
pub fn support_weights_lattice(code: &MatrixCode, limits: &Limits) -> Result<Vec<usize>> {
    let lattice = Lattice::of(code.field(), code.n(), limits.subspaces)?;
    let dims: Vec<(usize, usize)> = lattice
        .subspaces()
        .par_iter()
        .map(|s| Ok((s.dim(), code.supported_dim(s, Side::Column)?)))
        .collect::<Result<_>>()?;
    Ok((1..=code.dim())
        .map(|i| dims.iter().filter(|&&(_, d)| d >= i).map(|&(s, _)| s).min().expect("supp ⊆ F_q^n"))
        .collect())
}

/// Optimal anticodes attaining the minimum in the definition of `a_i`.
pub fn minimizing_anticodes(code: &MatrixCode, i: usize, limits: &Limits) -> Result<Vec<MatrixCode>> {
    check_weights_input(code)?;
    if i == 0 || i > code.dim() {
        return Err(Error::InvalidParameters(format!("i must lie in 1..={}, got {i}", code.dim())));
    }
    let inter = anticode_intersections(code, limits)?;
    let best = inter.iter().filter(|(_, d)| *d >= i).map(|(a, _)| a.dim()).min().expect("full space");
    Ok(inter.into_iter().filter(|(a, d)| *d >= i && a.dim() == best).map(|(a, _)| a).collect())
}
