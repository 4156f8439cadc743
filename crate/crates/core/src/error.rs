use thiserror::Error;

/// Errors produced by matrix construction, parsing and the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("expected {expected} entries for an {n}x{n} matrix, got {got}", expected = n * n)]
    WrongEntryCount { n: usize, got: usize },

    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("entry ({row}, {col}) is negative ({value})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("matrix is reducible; an irreducible matrix is required")]
    Reducible,

    #[error("matrix is irreducible; use the irreducible trace")]
    Irreducible,

    #[error("left Perron vector is missing or not strictly positive")]
    NoPositiveLeftVector,

    #[error("overflow while forming a matrix power")]
    Overflow,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is nilpotent; use the nilpotent trace")]
    Nilpotent,

    #[error("term k={k} (scale {scale}) leaves the nonnegative cone at entry ({row}, {col})")]
    LeavesCone {
        k: usize,
        scale: f64,
        row: usize,
        col: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
