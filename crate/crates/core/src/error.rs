use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("interpolated coefficient of t^{degree} is not an integer: {value}")]
    IntegralityViolation { degree: usize, value: String },

    #[error("duplicate abscissa t = {0} in interpolation input")]
    DuplicateAbscissa(String),

    #[error("enumeration budget exceeded ({limit} candidate prefixes)")]
    BudgetExceeded { limit: u64 },

    #[error("invalid sample point t = {t}: {reason}")]
    InvalidSamplePoint { t: u64, reason: String },

    #[error("interpolant disagrees with the holdout evaluation at t = {t}: got {got}, expected {expected}")]
    HoldoutMismatch { t: u64, got: String, expected: String },

    #[error("sanity check failed: {0}")]
    SanityCheckFailed(String),

    #[error("region count is negative: {0}")]
    NegativeRegionCount(String),

    #[error("invalid arrangement parameters: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
