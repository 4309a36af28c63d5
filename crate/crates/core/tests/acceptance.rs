//! One pass/fail line per acceptance criterion.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use common::*;
use rankmetric::equivalence::is_equivalent;
use rankmetric::qpm::rho;
use rankmetric::subspace::{column_space, row_space};
use rankmetric::vector_code::VectorCode;
use rankmetric::weights::{gen_weights_anticode, gen_weights_qpm, minimizing_anticodes, support_weights};
use rankmetric::{Limits, MatrixCode, QPolymatroid, Rational, Side, Subspace, Tower};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn lim() -> Limits {
    Limits::default()
}

fn e<E: std::fmt::Debug>(err: E) -> String {
    format!("{err:?}")
}

fn corpus_codes() -> &'static [MatrixCode] {
    static CORPUS: OnceLock<Vec<MatrixCode>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus(0x5eed, 4))
}

/// Brute-force minimum distances of the corpus, unbounded scans.
fn corpus_distances() -> &'static [usize] {
    static DISTANCES: OnceLock<Vec<usize>> = OnceLock::new();
    DISTANCES.get_or_init(|| {
        corpus_codes().iter().map(|c| c.min_distance(&Limits::unbounded()).expect("nonzero code")).collect()
    })
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn criterion_1() -> Check {
    let c = nesting_example();
    let f = c.field().clone();
    let a = gen_weights_anticode(&c, &lim()).map_err(e)?.a;
    ensure!(a[..2] == [1, 2], "a_1, a_2 = {:?}", &a[..2]);
    ensure!(gen_weights_qpm(&c, &lim()).map_err(e)?.a == a, "rank-function weights differ");
    // No proper optimal anticode contains C: the codewords' column and row spaces
    // already span F_2^3, hence a_3 = 3.
    let mut col = Subspace::zero(&f, 3);
    let mut row = Subspace::zero(&f, 3);
    for t in 1..c.size() as u64 {
        let m = c.codeword(t);
        col = col.sum(&column_space(&m)).map_err(e)?;
        row = row.sum(&row_space(&m)).map_err(e)?;
    }
    ensure!(col.dim() == 3 && row.dim() == 3 && a[2] == 3, "a_3 = {}, supports {} / {}", a[2], col.dim(), row.dim());
    let both = |s: &Subspace| -> Result<BTreeSet<MatrixCode>, String> {
        Ok(BTreeSet::from([
            MatrixCode::supported_space(&f, 3, 3, s, Side::Column).map_err(e)?,
            MatrixCode::supported_space(&f, 3, 3, s, Side::Row).map_err(e)?,
        ]))
    };
    let m1: BTreeSet<_> = minimizing_anticodes(&c, 1, &lim()).map_err(e)?.into_iter().collect();
    let m2: BTreeSet<_> = minimizing_anticodes(&c, 2, &lim()).map_err(e)?.into_iter().collect();
    ensure!(m1 == both(&span(&f, &[&[1, 0, 0]]))?, "i=1 minimizers differ");
    ensure!(m2 == both(&span(&f, &[&[0, 1, 0], &[0, 0, 1]]))?, "i=2 minimizers differ");
    for a1 in &m1 {
        for a2 in &m2 {
            ensure!(!a1.is_subcode_of(a2).map_err(e)?, "an i=1 minimizer nests in an i=2 minimizer");
            ensure!(!a2.is_subcode_of(a1).map_err(e)?, "an i=2 minimizer nests in an i=1 minimizer");
        }
    }
    Ok(format!("a = {a:?}; minimizers 2 + 2; no nesting either way"))
}

fn criterion_2() -> Check {
    let c = exnot();
    let t = c.transpose();
    ensure!(c.is_optimal_anticode(&lim()).map_err(e)?, "not an optimal anticode");
    let a = gen_weights_anticode(&c, &lim()).map_err(e)?.a;
    ensure!(a[1] == 1, "a_2 = {}", a[1]);
    let cs = support_weights(&c, &lim()).map_err(e)?;
    let cs_t = support_weights(&t, &lim()).map_err(e)?;
    ensure!(cs[1] == 2 && cs_t[1] == 1, "cs_2 = {}, cs_2(C^t) = {}", cs[1], cs_t[1]);
    let w = is_equivalent(&c, &t, &lim()).map_err(e)?.ok_or("no witness for C ~ C^t")?;
    ensure!(w.apply(&c).map_err(e)? == t, "witness does not map C to C^t");
    Ok(format!(
        "a_2 = 1, cs_2 = 2, cs_2(C^t) = 1; witness A = {:?}, B = {:?}, transposed = {}",
        w.a.to_rows(),
        w.b.to_rows(),
        w.transposed
    ))
}

fn criterion_3() -> Check {
    let c = ternary_example();
    let f = c.field().clone();
    let j = span(&f, &[&[1, 0]]);
    let i = span(&f, &[&[0, 1]]);
    ensure!(rho(&c, &j, Side::Column).map_err(e)? == r(1, 1), "ρ_c(⟨(1,0)⟩) ≠ 1");
    ensure!(rho(&c, &i, Side::Column).map_err(e)? == r(1, 2), "ρ_c(⟨(0,1)⟩) ≠ 1/2");
    let p = QPolymatroid::from_code(&c, Side::Column, &lim()).map_err(e)?;
    ensure!(!p.is_qmatroid(), "table is integer-valued");
    // α ρ for α = k/2: never both a q-polymatroid and integer-valued.
    for k in (-8i64..=8).filter(|&k| k != 0) {
        let alpha = r(k, 2);
        let scaled = QPolymatroid::from_fn(&f, 2, &lim(), |s| alpha * p.value(s).unwrap()).map_err(e)?;
        ensure!(!(scaled.check_axioms().is_pass() && scaled.is_qmatroid()), "α = {alpha} gives a q-matroid");
    }
    Ok("ρ_c = 1 and 1/2 exactly; not a q-matroid; no multiple k/2 (|k| ≤ 8) is one".into())
}

fn criterion_4() -> Check {
    let c1 = mrd_c1();
    let c2 = gabidulin_expanded();
    let uniform = QPolymatroid::uniform_mrd(c1.field(), 4, 4, 4, &lim()).map_err(e)?;
    for (name, c) in [("C_1", &c1), ("C_2", &c2)] {
        ensure!(c.dim() == 4, "{name} has dimension {}", c.dim());
        ensure!(c.min_distance(&lim()).map_err(e)? == 4, "{name}: d ≠ 4");
        ensure!(c.is_mrd(&lim()).map_err(e)?, "{name} is not MRD");
        for side in [Side::Column, Side::Row] {
            let p = QPolymatroid::from_code(c, side, &lim()).map_err(e)?;
            ensure!(p == uniform, "P({name}, {side}) differs from the uniform table");
        }
    }
    let cov1 = c1.covering_radius(&lim()).map_err(e)?;
    let cov2 = c2.covering_radius(&lim()).map_err(e)?;
    ensure!(cov1 == 2 && cov2 == 3, "covering radii {cov1}, {cov2}");
    Ok("both MRD with d = 4; four tables equal min(dim J, 1); cov = 2 vs 3".into())
}

fn criterion_5() -> Check {
    let (c1, c2) = weight_pair();
    let f = c1.field().clone();
    let lines = [span(&f, &[&[0, 1]]), span(&f, &[&[1, 0]]), span(&f, &[&[1, 1]])];
    let p1 = QPolymatroid::from_code(&c1, Side::Column, &lim()).map_err(e)?;
    let p2 = QPolymatroid::from_code(&c2, Side::Column, &lim()).map_err(e)?;
    let v1: Vec<Rational> = lines.iter().map(|l| p1.value(l).unwrap()).collect();
    let v2: Vec<Rational> = lines.iter().map(|l| p2.value(l).unwrap()).collect();
    ensure!(v1 == [r(1, 2), r(1, 1), r(1, 1)], "ρ_1 on lines = {v1:?}");
    ensure!(v2 == [r(1, 2), r(1, 2), r(1, 1)], "ρ_2 on lines = {v2:?}");
    ensure!(p1.equivalent(&p2, &lim()).map_err(e)?.is_none(), "P(C_1,c) ~ P(C_2,c)");
    for (name, c, p) in [("C_1", &c1, &p1), ("C_2", &c2, &p2)] {
        let pr = QPolymatroid::from_code(c, Side::Row, &lim()).map_err(e)?;
        ensure!(p.equivalent(&pr, &lim()).map_err(e)?.is_some(), "P({name},c) ≁ P({name},r)");
        for profile in [gen_weights_anticode(c, &lim()).map_err(e)?, gen_weights_qpm(c, &lim()).map_err(e)?] {
            ensure!(profile.a == [1, 2], "{name} profile {:?}", profile.a);
        }
    }
    Ok("line values match; C_1/C_2 tables inequivalent; column ~ row within each; a = (1, 2)".into())
}

fn criterion_6() -> Check {
    let codes = corpus_codes();
    let mut tables = 0;
    for c in codes {
        for side in [Side::Column, Side::Row] {
            let p = QPolymatroid::from_code(c, side, &lim()).map_err(e)?;
            ensure!(p.check_axioms().is_pass(), "{c:?} {side}: {:?}", p.check_axioms());
            let d = p.dual();
            ensure!(d.check_axioms().is_pass(), "{c:?} {side} dual: {:?}", d.check_axioms());
            ensure!(d.dual() == p, "{c:?} {side}: P** ≠ P");
            tables += 1;
        }
    }
    Ok(format!("{} codes, {tables} tables and their duals satisfy (P1)-(P3); P** = P", codes.len()))
}

fn criterion_7() -> Check {
    let codes = corpus_codes();
    let mut rng = rng(7);
    let (mut d_checked, mut equal_cs, mut bounded_cs) = (0, 0, 0);
    for (c, &d) in codes.iter().zip(corpus_distances()) {
        let anti = gen_weights_anticode(c, &lim()).map_err(e)?;
        let qpm = gen_weights_qpm(c, &lim()).map_err(e)?;
        ensure!(anti.a == qpm.a, "{c:?}: anticode {:?} vs rank-function {:?}", anti.a, qpm.a);
        ensure!(anti.a[0] == d, "{c:?}: a_1 = {} but d = {d}", anti.a[0]);
        d_checked += 1;
        for _ in 0..20 {
            let image = random_isometry(&mut rng, c);
            let a = gen_weights_qpm(&image, &lim()).map_err(e)?.a;
            ensure!(a == anti.a, "{c:?}: isometric image has profile {a:?}");
        }
        let cs = support_weights(c, &lim()).map_err(e)?;
        if c.m() > c.n() {
            ensure!(anti.a == cs, "{c:?}: a = {:?}, cs = {cs:?}", anti.a);
            equal_cs += 1;
        } else {
            ensure!(anti.a.iter().zip(&cs).all(|(a, s)| a <= s), "{c:?}: a = {:?}, cs = {cs:?}", anti.a);
            bounded_cs += 1;
        }
    }
    Ok(format!(
        "{} codes: methods agree; a_1 = d on {d_checked} codes; 20 isometries each; a = cs on {equal_cs}, a ≤ cs on {bounded_cs}",
        codes.len()
    ))
}

fn criterion_8() -> Check {
    let codes = corpus_codes();
    for c in codes {
        let dual = c.dual();
        ensure!(dual.dim() + c.dim() == c.n() * c.m() && dual.dual() == *c, "{c:?}: biduality");
        for side in [Side::Column, Side::Row] {
            let lhs = QPolymatroid::from_code(c, side, &lim()).map_err(e)?.dual();
            let rhs = QPolymatroid::from_code(&dual, side, &lim()).map_err(e)?;
            ensure!(lhs == rhs, "{c:?} {side}: P(C)* ≠ P(C^⊥)");
        }
    }
    Ok(format!("{} codes, both sides table-identical", codes.len()))
}

fn criterion_9() -> Check {
    let mut rng = rng(9);
    let mut count = 0;
    for m in [2u32, 3] {
        let tower = Tower::prime_base(2, m).map_err(e)?;
        for n in 1..=m as usize {
            for k in 1..=n {
                for _ in 0..5 {
                    let c = random_vector_code(&mut rng, &tower, n, k);
                    let g1 = random_basis(&mut rng, &tower);
                    let g2 = loop {
                        let b = random_basis(&mut rng, &tower);
                        if b != g1 {
                            break b;
                        }
                    };
                    let x1 = c.expand(&g1).map_err(e)?;
                    let x2 = c.expand(&g2).map_err(e)?;
                    ensure!(x1.dim() == m as usize * k && x2.dim() == x1.dim(), "{c:?}: dim Γ(C) = {}", x1.dim());
                    let d = c.min_distance(&lim()).map_err(e)?;
                    ensure!(x1.min_distance(&lim()).map_err(e)? == d, "{c:?}: distance not preserved");
                    let p1 = QPolymatroid::from_code(&x1, Side::Column, &lim()).map_err(e)?;
                    let p2 = QPolymatroid::from_code(&x2, Side::Column, &lim()).map_err(e)?;
                    ensure!(p1 == p2, "{c:?}: P(Γ(C)) ≠ P(Γ'(C))");
                    let vd = c.dual().expand(&g1).map_err(e)?;
                    ensure!(vd == c.expand(&g1.dual()).map_err(e)?.dual(), "{c:?}: Γ(C^⊥) ≠ Γ*(C)^⊥");
                    let pd = QPolymatroid::from_code(&vd, Side::Column, &lim()).map_err(e)?;
                    ensure!(pd == p1.dual(), "{c:?}: P(Γ(C^⊥)) ≠ P(Γ(C))*");
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} codes over F_4 and F_8, two bases each"))
}

fn criterion_10() -> Check {
    let mut checked = 0;
    for (c, &d) in corpus_codes().iter().zip(corpus_distances()) {
        ensure!(c.dim() <= c.m() * (c.n() - d + 1), "{c:?} violates the Singleton bound (d = {d})");
        checked += 1;
    }
    let tower = Tower::prime_base(2, 4).map_err(e)?;
    for n in 1..=4 {
        for k in 1..=n {
            let g = VectorCode::gabidulin(&tower, n, k, None).map_err(e)?;
            let d = g.min_distance(&lim()).map_err(e)?;
            ensure!(d == n - k + 1, "Gabidulin n={n} k={k}: d = {d}");
        }
    }
    Ok(format!("Singleton holds on {checked} codes; Gabidulin d = n - k + 1 for all k <= n <= 4"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("nesting example weights and minimizers", criterion_1),
        ("anticode vs support weights under transposition", criterion_2),
        ("ternary table is not a q-matroid", criterion_3),
        ("inequivalent MRD codes with equal tables", criterion_4),
        ("equal weights, inequivalent tables", criterion_5),
        ("axioms and P** = P on the corpus", criterion_6),
        ("weight methods agree and are invariant", criterion_7),
        ("table duality matches code duality", criterion_8),
        ("vector-code expansions and trace-dual bases", criterion_9),
        ("Singleton bound and Gabidulin distances", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
