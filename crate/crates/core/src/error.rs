use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("no separator: {0}")]
    NoSeparator(String),

    #[error("graph has {n} vertices, above the oracle limit of {max_n}")]
    ScaleGuard { n: usize, max_n: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
