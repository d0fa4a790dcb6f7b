use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vectors need dimension at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("expected dimension {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),

    #[error("zero vector where a nonzero one is required")]
    ZeroVector,

    #[error("triangle inequality violated for sides ({a}, {b}, {c})")]
    TriangleInequality { a: f64, b: f64, c: f64 },

    #[error("side lengths must be positive and finite, got ({a}, {b}, {c})")]
    InvalidSide { a: f64, b: f64, c: f64 },

    #[error("inconsistent side lengths: negative area radicand {0}")]
    NegativeRadicand(f64),

    #[error("half-disk needs s > 0, got {0}")]
    InvalidHalfDisk(f64),

    #[error("unit-speed violated: |‖r'‖ - 1| = {residual:e} exceeds {tol:e}")]
    NotUnitSpeed { residual: f64, tol: f64 },

    #[error("invalid curve parameters: {0}")]
    InvalidCurve(String),

    #[error("need at least 3 samples, got {0}")]
    TooFewSamples(usize),

    #[error("sample index {index} out of the interior range 1..={max}")]
    SampleIndex { index: usize, max: usize },

    #[error("non-uniform sample spacing at row {0}")]
    NonUniformSpacing(usize),

    #[error("parameter values not strictly increasing at row {0}")]
    NotIncreasing(usize),

    #[error("not a rational number: {0:?}")]
    NotRational(String),

    #[error("{0}")]
    Parse(String),
}
