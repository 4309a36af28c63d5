//! q-polymatroids as complete rank tables over the subspace lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::code::{MatrixCode, Side};
use crate::field::Field;
use crate::lattice::Lattice;
use crate::linalg::{gl_order, general_linear_group, Matrix};
use crate::subspace::Subspace;
use crate::{Error, Limits, Result};

/// Exact rank values.
pub type Rational = num_rational::Ratio<i64>;

/// The three rank-function axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `0 ≤ ρ(A) ≤ dim A`
    P1,
    /// `A ⊆ B ⇒ ρ(A) ≤ ρ(B)`
    P2,
    /// `ρ(A + B) + ρ(A ∩ B) ≤ ρ(A) + ρ(B)`
    P3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomReport {
    Pass,
    Violation { axiom: Axiom, a: Subspace, b: Option<Subspace> },
}

impl AxiomReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }
}

/// A function `ρ` on all subspaces of `F_q^n`, stored in lattice order.
#[derive(Clone)]
pub struct QPolymatroid {
    lattice: Arc<Lattice>,
    values: Vec<Rational>,
}

impl PartialEq for QPolymatroid {
    fn eq(&self, other: &Self) -> bool {
        self.field() == other.field() && self.ground_dim() == other.ground_dim() && self.values == other.values
    }
}

impl Eq for QPolymatroid {}

impl fmt::Debug for QPolymatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries().map(|(s, v)| (s.basis().to_vec(), v.to_string())))
            .finish()
    }
}

/// `ρ_c(C, J) = (dim C − dim C(J^⊥, c)) / m`, and the row analogue divided by `n`.
pub fn rho(code: &MatrixCode, x: &Subspace, side: Side) -> Result<Rational> {
    code.check_orientation()?;
    let sub = code.supported_dim(&x.orth(), side)?;
    let denom = match side {
        Side::Column => code.m(),
        Side::Row => code.n(),
    };
    Ok(Rational::new((code.dim() - sub) as i64, denom as i64))
}

impl QPolymatroid {
    /// Tabulates `f` over every subspace of `F_q^n`.
    pub fn from_fn(
        field: &Field,
        n: usize,
        limits: &Limits,
        f: impl Fn(&Subspace) -> Rational + Sync + Send,
    ) -> Result<Self> {
        let lattice = Lattice::of(field, n, limits.subspaces)?;
        let values = lattice.subspaces().par_iter().map(f).collect();
        Ok(QPolymatroid { lattice, values })
    }

    /// Builds a table from explicit entries, each subspace exactly once.
    pub fn from_entries(
        field: &Field,
        n: usize,
        entries: impl IntoIterator<Item = (Subspace, Rational)>,
        limits: &Limits,
    ) -> Result<Self> {
        let lattice = Lattice::of(field, n, limits.subspaces)?;
        let mut values: Vec<Option<Rational>> = vec![None; lattice.len()];
        for (s, v) in entries {
            let i = lattice
                .index_of(&s)
                .ok_or_else(|| Error::InvalidParameters(format!("{s:?} is not a subspace of F^{n}")))?;
            if values[i].replace(v).is_some() {
                return Err(Error::InvalidParameters(format!("duplicate entry for {s:?}")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::InvalidParameters(format!("missing entry for {:?}", lattice.get(i)))))
            .collect::<Result<_>>()?;
        Ok(QPolymatroid { lattice, values })
    }

    /// `P(C, side)`. Requires `n ≤ m`.
    pub fn from_code(code: &MatrixCode, side: Side, limits: &Limits) -> Result<Self> {
        code.check_orientation()?;
        let (ground, denom) = match side {
            Side::Column => (code.n(), code.m()),
            Side::Row => (code.m(), code.n()),
        };
        let lattice = Lattice::of(code.field(), ground, limits.subspaces)?;
        let k = code.dim();
        let values = (0..lattice.len())
            .into_par_iter()
            .map(|i| {
                let perp = lattice.get(lattice.orth_index(i));
                let sub = code.supported_dim(perp, side).expect("ambient matches ground space");
                Rational::new((k - sub) as i64, denom as i64)
            })
            .collect();
        Ok(QPolymatroid { lattice, values })
    }

    /// `ρ(J) = min(dim J, n − d + 1)`.
    pub fn uniform_mrd(field: &Field, n: usize, m: usize, d: usize, limits: &Limits) -> Result<Self> {
        if !(1 <= d && d <= n && n <= m) {
            return Err(Error::InvalidParameters(format!("need 1 <= d <= n <= m, got d={d}, n={n}, m={m}")));
        }
        Self::from_fn(field, n, limits, |s| Rational::from_integer(s.dim().min(n - d + 1) as i64))
    }

    /// `ρ(J) = dim(J + ⟨e_1, …, e_{n−t}⟩) − (n − t)`.
    pub fn anticode(field: &Field, n: usize, t: usize, limits: &Limits) -> Result<Self> {
        if t > n {
            return Err(Error::InvalidParameters(format!("need t <= n, got t={t}, n={n}")));
        }
        let e = Subspace::coordinate(field, n, 0..n - t);
        Self::from_fn(field, n, limits, |s| {
            Rational::from_integer((s.sum(&e).expect("same ambient").dim() - (n - t)) as i64)
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn field(&self) -> &Field {
        self.lattice.field()
    }

    pub fn ground_dim(&self) -> usize {
        self.lattice.ambient_dim()
    }

    /// Values in lattice order.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, s: &Subspace) -> Option<Rational> {
        self.lattice.index_of(s).map(|i| self.values[i])
    }

    pub fn value_at(&self, i: usize) -> Rational {
        self.values[i]
    }

    /// `ρ(F_q^n)`.
    pub fn rank(&self) -> Rational {
        self.values[self.lattice.full_index()]
    }

    /// `(subspace, value)` pairs in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Subspace, Rational)> + '_ {
        self.lattice.subspaces().iter().zip(self.values.iter().copied())
    }

    /// Exhaustive check of (P1), (P2), (P3); reports the first violation in
    /// lattice order.
    pub fn check_axioms(&self) -> AxiomReport {
        let l = &*self.lattice;
        let zero = Rational::from_integer(0);
        for (i, s) in l.subspaces().iter().enumerate() {
            let v = self.values[i];
            if v < zero || v > Rational::from_integer(s.dim() as i64) {
                return AxiomReport::Violation { axiom: Axiom::P1, a: s.clone(), b: None };
            }
        }
        let len = l.len();
        let witness = |axiom, a: usize, b: usize| AxiomReport::Violation {
            axiom,
            a: l.get(a).clone(),
            b: Some(l.get(b).clone()),
        };
        let p2 = (0..len).into_par_iter().find_map_first(|a| {
            (0..len)
                .find(|&b| l.is_subspace_of(a, b) && self.values[a] > self.values[b])
                .map(|b| (a, b))
        });
        if let Some((a, b)) = p2 {
            return witness(Axiom::P2, a, b);
        }
        let p3 = (0..len).into_par_iter().find_map_first(|a| {
            (0..len)
                .find(|&b| {
                    self.values[l.join_index(a, b)] + self.values[l.meet_index(a, b)] > self.values[a] + self.values[b]
                })
                .map(|b| (a, b))
        });
        if let Some((a, b)) = p3 {
            return witness(Axiom::P3, a, b);
        }
        AxiomReport::Pass
    }

    /// `ρ*(A) = dim A − ρ(F_q^n) + ρ(A^⊥)`.
    pub fn dual(&self) -> QPolymatroid {
        let total = self.rank();
        let values = (0..self.lattice.len())
            .map(|i| {
                Rational::from_integer(self.lattice.get(i).dim() as i64) - total
                    + self.values[self.lattice.orth_index(i)]
            })
            .collect();
        QPolymatroid { lattice: self.lattice.clone(), values }
    }

    /// Whether every value is an integer.
    pub fn is_qmatroid(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    fn profile(&self) -> BTreeMap<(usize, Rational), usize> {
        let mut counts = BTreeMap::new();
        for (s, v) in self.entries() {
            *counts.entry((s.dim(), v)).or_insert(0) += 1;
        }
        counts
    }

    fn check_same_ground(&self, other: &QPolymatroid) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.ground_dim() != other.ground_dim() {
            return Err(Error::AmbientMismatch { expected: self.ground_dim(), got: other.ground_dim() });
        }
        Ok(())
    }

    /// Searches `G ∈ GL_n` with `ρ_1(A) = ρ_2(A·G)` for every subspace `A`.
    /// Returns the first such `G` in enumeration order.
    pub fn equivalent(&self, other: &QPolymatroid, limits: &Limits) -> Result<Option<Matrix>> {
        self.check_same_ground(other)?;
        if self.profile() != other.profile() {
            return Ok(None);
        }
        let field = self.field();
        let n = self.ground_dim();
        Limits::check("matrices", gl_order(field.order(), n), limits.pairs)?;
        let group = general_linear_group(field, n);
        let l = &*self.lattice;
        // Only the 1-dimensional subspaces are needed to reject most candidates quickly;
        // lattice order visits them first.
        let hit = group.par_iter().find_first(|g| {
            l.subspaces().iter().enumerate().all(|(i, s)| {
                let image = s.image(g);
                other.values[l.index_of(&image).expect("image lies in the lattice")] == self.values[i]
            })
        });
        Ok(hit.cloned())
    }

    /// `d = n + 1 − min{s : ρ(J) = dim C / m for all J with dim J = s}`.
    pub fn min_distance(&self, code_dim: usize, m: usize) -> Result<usize> {
        if code_dim == 0 {
            return Err(Error::ZeroCode);
        }
        let n = self.ground_dim();
        let target = Rational::new(code_dim as i64, m as i64);
        let s = (0..=n)
            .find(|&s| self.entries().filter(|(j, _)| j.dim() == s).all(|(_, v)| v == target))
            .ok_or_else(|| Error::InvalidParameters(format!("table never reaches {target}")))?;
        Ok(n + 1 - s)
    }

    /// Whether `ρ(J) = dim J` for every `J` of dimension `n − d + 1`.
    pub fn is_mrd(&self, code_dim: usize, m: usize) -> Result<bool> {
        let d = self.min_distance(code_dim, m)?;
        let s = self.ground_dim() + 1 - d;
        Ok(self.entries().filter(|(j, _)| j.dim() == s).all(|(_, v)| v == Rational::from_integer(s as i64)))
    }

    /// `Some(t)` when the value set is exactly `{0, 1, …, t}` and `ρ(F_q^n) = t`.
    pub fn anticode_profile(&self) -> Option<usize> {
        let total = self.rank();
        if !total.is_integer() || *total.numer() < 0 {
            return None;
        }
        let t = total.to_integer() as usize;
        let mut seen = vec![false; t + 1];
        for v in &self.values {
            if !v.is_integer() || *v.numer() < 0 || v.to_integer() as usize > t {
                return None;
            }
            seen[v.to_integer() as usize] = true;
        }
        seen.iter().all(|&x| x).then_some(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn line(field: &Field, v: &[u32]) -> Subspace {
        Subspace::span(field, v.len(), &[v.to_vec()]).unwrap()
    }

    #[test]
    fn hand_built_violations() {
        let f = f2();
        let lim = Limits::default();
        let p = QPolymatroid::from_fn(&f, 2, &lim, |s| {
            Rational::from_integer(if s.dim() == 1 && s.basis()[0] == vec![1, 1] { 2 } else { 0 })
        })
        .unwrap();
        match p.check_axioms() {
            AxiomReport::Violation { axiom: Axiom::P1, a, b: None } => assert_eq!(a, line(&f, &[1, 1])),
            other => panic!("{other:?}"),
        }
        let p = QPolymatroid::from_fn(&f, 2, &lim, |s| {
            Rational::from_integer(if s.dim() == 2 { 0 } else { s.dim() as i64 })
        })
        .unwrap();
        assert!(matches!(p.check_axioms(), AxiomReport::Violation { axiom: Axiom::P2, .. }));
        let p = QPolymatroid::from_fn(&f, 2, &lim, |s| match s.dim() {
            0 => r(0, 1),
            1 => r(1, 2),
            _ => r(2, 1),
        })
        .unwrap();
        assert!(matches!(p.check_axioms(), AxiomReport::Violation { axiom: Axiom::P3, .. }));
    }

    #[test]
    fn closed_forms() {
        let f = Field::prime(3).unwrap();
        let lim = Limits::default();
        for n in 1..=3 {
            let free = QPolymatroid::from_fn(&f, n, &lim, |s| Rational::from_integer(s.dim() as i64)).unwrap();
            assert_eq!(QPolymatroid::uniform_mrd(&f, n, n, 1, &lim).unwrap(), free);
            assert_eq!(QPolymatroid::anticode(&f, n, n, &lim).unwrap(), free);
            let zero = QPolymatroid::anticode(&f, n, 0, &lim).unwrap();
            assert!(zero.values().iter().all(|v| *v == r(0, 1)));
            assert_eq!(zero.dual(), free);
            for k in 0..=n {
                let uk = QPolymatroid::from_fn(&f, n, &lim, |s| Rational::from_integer(s.dim().min(k) as i64)).unwrap();
                let dual = QPolymatroid::from_fn(&f, n, &lim, |s| Rational::from_integer(s.dim().min(n - k) as i64))
                    .unwrap();
                assert_eq!(uk.dual(), dual);
                assert!(uk.check_axioms().is_pass());
            }
            for t in 0..=n {
                let a = QPolymatroid::anticode(&f, n, t, &lim).unwrap();
                assert!(a.is_qmatroid());
                assert!(a.check_axioms().is_pass());
                assert_eq!(a.anticode_profile(), Some(t));
            }
        }
        assert!(QPolymatroid::uniform_mrd(&f, 3, 2, 1, &lim).is_err());
    }

    #[test]
    fn non_matroid_example() {
        let f3 = Field::prime(3).unwrap();
        let e = |i: usize, j: usize| {
            let mut m = Matrix::zeros(&f3, 2, 2);
            m.set(i, j, 1);
            m
        };
        let c = MatrixCode::from_generators(&f3, 2, 2, &[e(0, 0), e(0, 1), e(1, 0)]).unwrap();
        assert_eq!(rho(&c, &line(&f3, &[1, 0]), Side::Column).unwrap(), r(1, 1));
        assert_eq!(rho(&c, &line(&f3, &[0, 1]), Side::Column).unwrap(), r(1, 2));
        assert_eq!(rho(&c, &Subspace::zero(&f3, 2), Side::Column).unwrap(), r(0, 1));
        let p = QPolymatroid::from_code(&c, Side::Column, &Limits::default()).unwrap();
        assert!(!p.is_qmatroid());
        assert!(p.check_axioms().is_pass());
        assert_eq!(p.rank(), r(3, 2));
    }

    #[test]
    fn from_entries_requires_complete_domain() {
        let f = f2();
        let lim = Limits::default();
        let p = QPolymatroid::anticode(&f, 2, 1, &lim).unwrap();
        let entries: Vec<_> = p.entries().map(|(s, v)| (s.clone(), v)).collect();
        assert_eq!(QPolymatroid::from_entries(&f, 2, entries.clone(), &lim).unwrap(), p);
        assert!(QPolymatroid::from_entries(&f, 2, entries[1..].to_vec(), &lim).is_err());
        let mut dup = entries.clone();
        dup.push(entries[0].clone());
        assert!(QPolymatroid::from_entries(&f, 2, dup, &lim).is_err());
    }

    #[test]
    fn equivalence_of_anticode_tables() {
        let f = f2();
        let lim = Limits::default();
        let a = QPolymatroid::anticode(&f, 3, 1, &lim).unwrap();
        let k = line(&f, &[1, 1, 0]);
        let code = MatrixCode::supported_space(&f, 3, 3, &k, Side::Column).unwrap();
        let p = QPolymatroid::from_code(&code, Side::Column, &lim).unwrap();
        let g = a.equivalent(&p, &lim).unwrap().expect("equivalent");
        for (s, v) in a.entries() {
            assert_eq!(p.value(&s.image(&g)), Some(v));
        }
        assert!(a.equivalent(&a, &lim).unwrap().is_some());
        let b = QPolymatroid::anticode(&f, 3, 2, &lim).unwrap();
        assert_eq!(a.equivalent(&b, &lim).unwrap(), None);
        let small = QPolymatroid::anticode(&f, 2, 1, &lim).unwrap();
        assert!(a.equivalent(&small, &lim).is_err());
    }
}
