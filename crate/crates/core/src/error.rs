use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that is ill-shaped, mixes fields, or cannot be parsed.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// A well-formed input that violates a documented precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A verification that theory guarantees has failed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
