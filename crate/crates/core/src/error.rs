use thiserror::Error;

/// Errors raised while constructing or evaluating geometry objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("row {row} is (numerically) the zero vector")]
    ZeroVector { row: usize },

    #[error("row {row} has Euclidean length {length}, expected 1")]
    NotUnit { row: usize, length: f64 },

    #[error("vectors are linearly dependent (|det| = {det:e})")]
    DependentFrame { det: f64 },

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("exponent must be positive or infinite, got {0}")]
    InvalidExponent(f64),

    #[error("operation is not defined for exponent {0}")]
    UnsupportedExponent(String),

    #[error("distance with exponent {0} is not a metric")]
    NotAMetric(f64),

    #[error("frame is degenerate for this conversion: {0}")]
    DegenerateFrame(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
