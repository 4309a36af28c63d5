//! Rank-metric codes over finite fields and their q-polymatroids.
//!
//! All arithmetic is exact: field elements are canonical integers, subspaces
//! are canonical RREF bases, and rank-function values are reduced rationals.
//! Every "for all subspaces" or "for all codewords" computation is an
//! exhaustive scan, bounded by the [`Limits`] passed in by the caller.

pub mod code;
pub mod equivalence;
pub mod field;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod qpm;
pub mod subspace;
pub mod tower;
pub mod vector_code;
pub mod weights;

pub use code::{MatrixCode, Side};
pub use equivalence::EquivalenceWitness;
pub use field::{Field, FieldElement};
pub use lattice::Lattice;
pub use linalg::Matrix;
pub use qpm::{AxiomReport, QPolymatroid, Rational};
pub use subspace::Subspace;
pub use tower::{ExtensionBasis, Tower};
pub use vector_code::VectorCode;
pub use weights::{WeightMethod, WeightProfile};

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("elements or objects belong to different fields")]
    FieldMismatch,
    #[error("value {value} is not an element of a field of order {order}")]
    OutOfRange { value: u32, order: u32 },
    #[error("entry {value} at row {row}, column {col} is not below the field order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: u32, order: u32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("guard exceeded: {count} {what} > limit {limit}")]
    GuardExceeded { what: &'static str, count: u128, limit: u128 },
    #[error("operation requires n <= m, but the code is {n}x{m}; transpose it first")]
    Orientation { n: usize, m: usize },
    #[error("minimum distance undefined for the zero code")]
    ZeroCode,
    #[error("matrix {0} is not invertible")]
    Singular(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid extension basis: {0}")]
    InvalidBasis(String),
    #[error("malformed document: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Upper bounds on exhaustive scans. Operations that would exceed a bound
/// fail with [`Error::GuardExceeded`] carrying the exact count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Subspaces per lattice.
    pub subspaces: u128,
    /// Codewords per scan (`q^k`).
    pub codewords: u128,
    /// `(A, B)` pairs (or `GL_n` elements) per equivalence search.
    pub pairs: u128,
    /// Ambient matrices per covering-radius scan (`q^{nm}`).
    pub covering: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { subspaces: 200_000, codewords: 1 << 22, pairs: 10_000_000, covering: 1 << 20 }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits { subspaces: u128::MAX, codewords: u128::MAX, pairs: u128::MAX, covering: u128::MAX }
    }

    pub(crate) fn check(what: &'static str, count: u128, limit: u128) -> Result<()> {
        if count > limit {
            Err(Error::GuardExceeded { what, count, limit })
        } else {
            Ok(())
        }
    }
}
