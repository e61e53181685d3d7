use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A quantity that is nonnegative in exact arithmetic came out
    /// negative beyond rounding tolerance.
    #[error("internal consistency violated: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub(crate) fn dim_mismatch(expected: usize, got: usize) -> Self {
        Error::InvalidDimension(format!("expected dimension {expected}, got {got}"))
    }
}
