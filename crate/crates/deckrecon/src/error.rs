use thiserror::Error;

/// Errors shared across the toolkit.
///
/// `InvariantViolation` is special: it is only returned when a computation
/// contradicts something the library treats as a theorem (for example, a
/// non-translate pair surviving the full zero-sum search). Seeing it means
/// a bug, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violation (likely a bug): {0}")]
    InvariantViolation(String),

    #[error("verification failure: {0}")]
    VerificationFailure(String),

    #[error("inputs are translates of each other")]
    TranslatesInput,
}

pub type Result<T> = std::result::Result<T, Error>;
