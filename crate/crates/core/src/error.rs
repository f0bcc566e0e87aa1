use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("module is not free over B: {0}")]
    NotFree(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("not well defined: {0}")]
    NotWellDefined(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
