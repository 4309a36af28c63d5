#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rankmetric::{Field, Limits, Matrix, MatrixCode, Subspace, Tower, VectorCode};

pub fn f2() -> Field {
    Field::prime(2).unwrap()
}

pub fn f3() -> Field {
    Field::prime(3).unwrap()
}

pub fn mat(field: &Field, rows: &[&[u32]]) -> Matrix {
    Matrix::from_rows(field, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn code(field: &Field, mats: &[Matrix]) -> MatrixCode {
    MatrixCode::from_generators(field, mats[0].rows(), mats[0].cols(), mats).unwrap()
}

pub fn span(field: &Field, vectors: &[&[u32]]) -> Subspace {
    let n = vectors[0].len();
    Subspace::span(field, n, &vectors.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn unit(field: &Field, n: usize, m: usize, i: usize, j: usize) -> Matrix {
    let mut e = Matrix::zeros(field, n, m);
    e.set(i, j, 1);
    e
}

/// The 3×3 binary code with a_1 = 1, a_2 = 2.
pub fn nesting_example() -> MatrixCode {
    let f = f2();
    code(
        &f,
        &[
            mat(&f, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
            mat(&f, &[&[0, 0, 0], &[0, 1, 1], &[0, 0, 1]]),
            mat(&f, &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
        ],
    )
}

/// `{[[a, a], [b, b]]}` over F_2.
pub fn exnot() -> MatrixCode {
    let f = f2();
    code(&f, &[mat(&f, &[&[1, 1], &[0, 0]]), mat(&f, &[&[0, 0], &[1, 1]])])
}

/// `⟨E_11, E_12, E_21⟩` over F_3.
pub fn ternary_example() -> MatrixCode {
    let f = f3();
    code(&f, &[unit(&f, 2, 2, 0, 0), unit(&f, 2, 2, 0, 1), unit(&f, 2, 2, 1, 0)])
}

/// The 4×4 binary MRD code with covering radius 2.
pub fn mrd_c1() -> MatrixCode {
    let f = f2();
    code(
        &f,
        &[
            mat(&f, &[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0]]),
            mat(&f, &[&[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1], &[1, 1, 0, 0]]),
            mat(&f, &[&[0, 0, 1, 0], &[0, 1, 1, 1], &[1, 0, 1, 0], &[1, 0, 0, 1]]),
            mat(&f, &[&[0, 0, 0, 1], &[1, 1, 1, 0], &[0, 1, 0, 1], &[0, 1, 1, 1]]),
        ],
    )
}

/// The expanded k = 1 Gabidulin code in F_16^4.
pub fn gabidulin_expanded() -> MatrixCode {
    let t = Tower::prime_base(2, 4).unwrap();
    VectorCode::gabidulin(&t, 4, 1, None).unwrap().expand(&t.power_basis()).unwrap()
}

/// `⟨I, E_12⟩` and `⟨[[0,1],[1,0]], E_12⟩` over F_2.
pub fn weight_pair() -> (MatrixCode, MatrixCode) {
    let f = f2();
    let e12 = unit(&f, 2, 2, 0, 1);
    (
        code(&f, &[Matrix::identity(&f, 2), e12.clone()]),
        code(&f, &[mat(&f, &[&[0, 1], &[1, 0]]), e12]),
    )
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, field: &Field, n: usize, m: usize) -> Matrix {
    let q = field.order();
    let data = (0..n * m).map(|_| rng.gen_range(0..q)).collect();
    Matrix::from_flat(field, n, m, data).unwrap()
}

pub fn random_invertible(rng: &mut impl Rng, field: &Field, n: usize) -> Matrix {
    loop {
        let a = random_matrix(rng, field, n, n);
        if a.is_invertible() {
            return a;
        }
    }
}

/// A uniformly generated code of exact dimension `k`.
pub fn random_code(rng: &mut impl Rng, field: &Field, n: usize, m: usize, k: usize) -> MatrixCode {
    loop {
        let gens: Vec<Matrix> = (0..k).map(|_| random_matrix(rng, field, n, m)).collect();
        let c = MatrixCode::from_generators(field, n, m, &gens).unwrap();
        if c.dim() == k {
            return c;
        }
    }
}

pub const SHAPES: [(usize, usize); 6] = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)];

/// Deterministic corpus over q ∈ {2, 3}, `2 ≤ n ≤ m ≤ 4`, every dimension
/// `1..=nm`, `rounds` samples per (q, shape, dim).
pub fn corpus(seed: u64, rounds: usize) -> Vec<MatrixCode> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for field in [f2(), f3()] {
        for (n, m) in SHAPES {
            for k in 1..=n * m {
                for _ in 0..rounds {
                    out.push(random_code(&mut r, &field, n, m, k));
                }
            }
        }
    }
    out
}

/// Whether a brute-force codeword scan fits the default guard.
pub fn scannable(c: &MatrixCode) -> bool {
    c.size() <= Limits::default().codewords
}

/// A random isometry image, transposing with probability 1/2 when square.
pub fn random_isometry(rng: &mut impl Rng, c: &MatrixCode) -> MatrixCode {
    let field = c.field();
    let source = if c.n() == c.m() && rng.gen_bool(0.5) { c.transpose() } else { c.clone() };
    let a = random_invertible(rng, field, c.n());
    let b = random_invertible(rng, field, c.m());
    source.transform(&a, &b).unwrap()
}

/// Random `F_{q^m}`-code of length `n` and dimension `k`.
pub fn random_vector_code(rng: &mut impl Rng, tower: &Tower, n: usize, k: usize) -> VectorCode {
    let order = tower.ext().order();
    loop {
        let gens: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..order)).collect()).collect();
        let c = VectorCode::new(tower, n, &gens).unwrap();
        if c.dim() == k {
            return c;
        }
    }
}

/// A random `F_q`-basis of the extension.
pub fn random_basis(rng: &mut impl Rng, tower: &Tower) -> rankmetric::ExtensionBasis {
    let order = tower.ext().order();
    loop {
        let elems: Vec<u32> = (0..tower.degree()).map(|_| rng.gen_range(1..order)).collect();
        if let Ok(b) = rankmetric::ExtensionBasis::new(tower, elems) {
            return b;
        }
    }
}
