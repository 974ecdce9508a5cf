use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("word of length {len} exceeds the bound {bound}")]
    ResourceLimit { len: usize, bound: usize },

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("singular Gram matrix: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
