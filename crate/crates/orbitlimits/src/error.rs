use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("pole at t = 0")]
    PoleAtZero,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("the zero vector has no projective limit")]
    ZeroPoint,
    #[error("transversality fails: {0}")]
    NotTransverse(String),
    #[error("complement data rejected: {0}")]
    BadComplement(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
