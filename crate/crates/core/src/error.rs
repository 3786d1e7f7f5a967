use thiserror::Error;

/// Errors raised by the geometry kernel and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector")]
    ZeroVector,
    #[error("empty point set")]
    EmptySet,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("negative coordinate {value} in point {point:?}")]
    NegativeCoordinate { point: Vec<i64>, value: i64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension must be at least 1")]
    ZeroAmbientDimension,
    #[error("not a hyperplane configuration: affine dimension {affine_dim} in ambient dimension {ambient_dim}")]
    NotHyperplane { ambient_dim: usize, affine_dim: usize },
    #[error("not a positive-covector configuration: covector {covector:?}, offset {offset}")]
    NotPositive { covector: Vec<i64>, offset: i64 },
    #[error("not full-dimensional: affine dimension {affine_dim} in ambient dimension {ambient_dim}")]
    NotFullDimensional { ambient_dim: usize, affine_dim: usize },
    #[error("invalid coordinate subspace: {0}")]
    InvalidSubspace(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("lemma hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
