use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("reducible minpoly suspected: {0}")]
    ReducibleSuspected(String),
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("minimal polynomial degree {degree} exceeds the maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("zero vector has no projective meaning")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} is outside the supported range")]
    DimensionOutOfRange(usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("outside the domain: {0}")]
    OutOfDomain(String),
    #[error("point lies outside the base simplex")]
    OutsideBase,
    #[error("the zero vertex has no piece")]
    ZeroVertex,
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("insufficient terms: need {needed}, have {have}")]
    InsufficientTerms { needed: usize, have: usize },
    #[error("rational input where an irrational one is required")]
    RationalInput,
    #[error("expected a quadratic irrational")]
    NotQuadratic,
    #[error("value too large for a machine integer")]
    Overflow,
    #[error("pattern violation: {0}")]
    PatternViolation(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sanity cap of {0} states exceeded")]
    StateCapExceeded(usize),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("corrupt simplex: {0}")]
    CorruptSimplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
