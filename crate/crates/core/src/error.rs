use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("context mismatch between operands")]
    ContextMismatch,
    #[error("unknown coefficient: degree {degree} exceeds precision {precision}")]
    UnknownCoefficient { degree: u32, precision: u32 },
    #[error("series is zero and has no leading term")]
    NoLeadingTerm,
    #[error("support threshold must be positive")]
    NonPositiveThreshold,
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("precision {precision} is below the truncation degree {truncation}")]
    InsufficientPrecision { precision: u32, truncation: u32 },
    #[error("monomial of degree {degree} lies outside the truncation degree {truncation}")]
    OutsideTruncation { degree: u32, truncation: u32 },
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("empty operator family")]
    EmptyFamily,
    #[error("operation requires {0}")]
    Unsupported(&'static str),
    #[error("family member `{0}` has no defining generator")]
    MissingGenerator(String),
    #[error("vector is not in the kernel of the meet")]
    NotInKernel,
    #[error("no admissible decomposition: remainder leading monomial is not smaller")]
    NotAdmissible,
    #[error("quotient has more than {bound} normal words (infinite-dimensional or too large)")]
    InfiniteDimensional { bound: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}
