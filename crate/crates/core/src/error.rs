use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |x - x^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("vectors are not orthonormal (max Gram deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("vectors are linearly dependent (singular-value ratio {0:e})")]
    LinearlyDependent(f64),

    #[error("basis elements are linearly dependent: rank {rank} < {expected}")]
    DependentBasis { rank: usize, expected: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
