use thiserror::Error;

/// Errors shared across the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("matrix is not skew-symmetric at ({i},{j})")]
    NotSkew { i: usize, j: usize },
    #[error("pfaffian requires even dimension, got {0}")]
    OddDimension(usize),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator index {i} out of range for rank {n}")]
    GeneratorRange { i: usize, n: usize },
    #[error("{v} is not below {w} in Bruhat order")]
    NotBruhatBelow { v: String, w: String },
    #[error("expected {expected} parameters, got {got}")]
    ParamCount { expected: usize, got: usize },
    #[error("point is not in the skew chart (left n x n minor vanishes)")]
    NotInChart,
    #[error("some minor M_{{j,k}} vanishes; outside the recoverable locus")]
    OutsideRecoverableLocus,
    #[error("invalid cell label: {0}")]
    InvalidCellLabel(String),
    #[error("input not recognized as a nonnegative-locus point: {0}")]
    NotNonnegativePoint(String),
    #[error("size guard exceeded (n = {n}, limit {limit}); pass allow_large to override")]
    GuardExceeded { n: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
