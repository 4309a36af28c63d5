mod common;

use common::*;
use rankmetric::qpm::rho;
use rankmetric::subspace::enumerate_subspaces;
use rankmetric::weights::{
    gen_weights_anticode, gen_weights_qpm, optimal_anticodes, support_weights, support_weights_exhaustive,
    support_weights_lattice,
};
use rankmetric::{Limits, MatrixCode, QPolymatroid, Rational, Side, Subspace};

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn rank_of_full_space_recovers_dimension() {
    for c in corpus(17, 1) {
        let pc = QPolymatroid::from_code(&c, Side::Column, &lim()).unwrap();
        let pr = QPolymatroid::from_code(&c, Side::Row, &lim()).unwrap();
        let k = Rational::from_integer(c.dim() as i64);
        assert_eq!(Rational::from_integer(c.m() as i64) * pc.rank(), k);
        assert_eq!(Rational::from_integer(c.n() as i64) * pr.rank(), k);
        assert_eq!(rho(&c, &Subspace::zero(c.field(), c.n()), Side::Column).unwrap(), Rational::from_integer(0));
    }
}

#[test]
fn table_distance_and_mrd_agree_with_codes() {
    for c in corpus(19, 1).into_iter().filter(scannable) {
        let p = QPolymatroid::from_code(&c, Side::Column, &lim()).unwrap();
        assert_eq!(p.min_distance(c.dim(), c.m()).unwrap(), c.min_distance(&lim()).unwrap(), "{c:?}");
        assert_eq!(p.is_mrd(c.dim(), c.m()).unwrap(), c.is_mrd(&lim()).unwrap(), "{c:?}");
        if c.is_mrd(&lim()).unwrap() {
            assert!(p.is_qmatroid());
            let d = c.min_distance(&lim()).unwrap();
            assert_eq!(p, QPolymatroid::uniform_mrd(c.field(), c.n(), c.m(), d, &lim()).unwrap());
        }
    }
}

#[test]
fn anticode_tables_are_equivalent_to_closed_form() {
    for field in [f2(), f3()] {
        for (n, m) in [(2, 2), (2, 3), (3, 3)] {
            for k in enumerate_subspaces(&field, n, None, 1000).unwrap() {
                let a = MatrixCode::supported_space(&field, n, m, &k, Side::Column).unwrap();
                let p = QPolymatroid::from_code(&a, Side::Column, &lim()).unwrap();
                assert!(p.is_qmatroid());
                assert_eq!(p.anticode_profile(), Some(k.dim()));
                let closed = QPolymatroid::anticode(&field, n, k.dim(), &lim()).unwrap();
                let g = closed.equivalent(&p, &lim()).unwrap().expect("equivalent to the closed form");
                for (s, v) in closed.entries() {
                    assert_eq!(p.value(&s.image(&g)), Some(v));
                }
            }
        }
    }
}

#[test]
fn equivalent_codes_give_equivalent_tables() {
    let mut r = rng(23);
    for field in [f2(), f3()] {
        for (n, m) in [(2, 2), (2, 3), (3, 3)] {
            let c = random_code(&mut r, &field, n, m, n * m / 2);
            let a = random_invertible(&mut r, &field, n);
            let b = random_invertible(&mut r, &field, m);
            let image = c.transform(&a, &b).unwrap();
            for side in [Side::Column, Side::Row] {
                let p1 = QPolymatroid::from_code(&c, side, &lim()).unwrap();
                let p2 = QPolymatroid::from_code(&image, side, &lim()).unwrap();
                assert!(p1.equivalent(&p2, &lim()).unwrap().is_some());
                assert!(p1.dual().equivalent(&p2.dual(), &lim()).unwrap().is_some());
            }
            if n == m {
                let t = c.transpose().transform(&a, &b).unwrap();
                let col = QPolymatroid::from_code(&c, Side::Column, &lim()).unwrap();
                let row = QPolymatroid::from_code(&t, Side::Row, &lim()).unwrap();
                assert!(col.equivalent(&row, &lim()).unwrap().is_some());
            } else {
                let col = QPolymatroid::from_code(&c, Side::Column, &lim()).unwrap();
                let row = QPolymatroid::from_code(&c, Side::Row, &lim()).unwrap();
                assert!(col.equivalent(&row, &lim()).is_err());
            }
        }
    }
}

#[test]
fn zero_code_table_is_zero() {
    let z = MatrixCode::zero(&f2(), 2, 3);
    let p = QPolymatroid::from_code(&z, Side::Column, &lim()).unwrap();
    assert!(p.values().iter().all(|v| *v == Rational::from_integer(0)));
    assert!(p.check_axioms().is_pass());
    assert_eq!(p.anticode_profile(), Some(0));
}

#[test]
fn exnot_tables() {
    let c = exnot();
    let row = QPolymatroid::from_code(&c, Side::Row, &lim()).unwrap();
    assert_eq!(row.anticode_profile(), Some(1));
    assert!(row.is_qmatroid());
    let col = QPolymatroid::from_code(&c, Side::Column, &lim()).unwrap();
    let values: std::collections::BTreeSet<Rational> = col.values().iter().copied().collect();
    assert_eq!(values, [0, 1, 2].iter().map(|&k| Rational::new(k, 2)).collect());
    assert!(!col.is_qmatroid());
}

#[test]
fn anticode_enumeration_counts() {
    assert_eq!(optimal_anticodes(&f2(), 2, 3, &lim()).unwrap().len(), 5);
    assert_eq!(optimal_anticodes(&f2(), 2, 2, &lim()).unwrap().len(), 8);
    assert_eq!(optimal_anticodes(&f2(), 3, 3, &lim()).unwrap().len(), 2 * 16 - 2);
    assert_eq!(optimal_anticodes(&f3(), 2, 4, &lim()).unwrap().len(), 6);
    for a in optimal_anticodes(&f3(), 2, 3, &lim()).unwrap() {
        assert_eq!(a.dim() % 3, 0);
    }
}

#[test]
fn mrd_profiles_follow_closed_form() {
    let g = gabidulin_expanded();
    assert_eq!(gen_weights_qpm(&g, &lim()).unwrap().a, vec![4, 4, 4, 4]);
    assert_eq!(gen_weights_anticode(&g, &lim()).unwrap().a, vec![4, 4, 4, 4]);
    for c in corpus(29, 1).into_iter().filter(scannable) {
        if !c.is_mrd(&lim()).unwrap() {
            continue;
        }
        let d = c.min_distance(&lim()).unwrap();
        let expected: Vec<usize> = (1..=c.dim()).map(|i| d - 1 + i.div_ceil(c.m())).collect();
        assert_eq!(gen_weights_qpm(&c, &lim()).unwrap().a, expected, "{c:?}");
    }
}

#[test]
fn support_weight_methods_agree() {
    let mut r = rng(31);
    for field in [f2(), f3()] {
        for (n, m) in [(2, 2), (2, 3), (3, 3), (2, 4)] {
            for k in 1..=5.min(n * m) {
                let c = random_code(&mut r, &field, n, m, k);
                let ex = support_weights_exhaustive(&c, &lim()).unwrap();
                assert_eq!(ex, support_weights_lattice(&c, &lim()).unwrap(), "{c:?}");
                assert_eq!(ex[0], c.min_distance(&lim()).unwrap());
                assert!(ex.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
    let big = random_code(&mut r, &f2(), 4, 4, 12);
    assert!(support_weights_exhaustive(&big, &lim()).is_err());
    assert_eq!(support_weights(&big, &lim()).unwrap(), support_weights_lattice(&big, &lim()).unwrap());
}

#[test]
fn weight_pair_profiles() {
    let (c1, c2) = weight_pair();
    for c in [&c1, &c2] {
        assert_eq!(gen_weights_anticode(c, &lim()).unwrap().a, vec![1, 2]);
        assert!(!c.is_optimal_anticode(&lim()).unwrap());
    }
}
