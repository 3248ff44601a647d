use thiserror::Error;

/// Errors raised by the library.
///
/// `Certificate` is reserved for self-checks that fail inside a construction;
/// it always indicates a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("instance too large: {what} = {actual} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("point {index} lies outside the {container}")]
    OutsideContainer { index: usize, container: String },

    #[error("internal certificate failure: {0}")]
    Certificate(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn certificate(msg: impl Into<String>) -> Self {
        Error::Certificate(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
