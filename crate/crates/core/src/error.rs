use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A problem size exceeded one of the tractability guards.
    #[error("size guard: {what} = {value} exceeds the limit {limit}")]
    SizeGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    /// The input is well-formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested construction is undefined for this input.
    #[error("ill-posed: {0}")]
    IllPosed(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}

pub(crate) fn parse_error(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: msg.into(),
    }
}
