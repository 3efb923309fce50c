use thiserror::Error;

/// Errors produced by the library.
///
/// The variants are grouped so that a command-line front end can map them to
/// distinct exit codes: input problems, exceeded size caps and violated
/// internal invariants.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} out of range for radix {radix} at position {position}")]
    OutOfRadix { position: usize, value: u32, radix: u32 },

    #[error("domain mismatch: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} requires {requested}, cap is {cap}")]
    CapExceeded { what: &'static str, requested: u128, cap: u128 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("no recurrence within horizon {0}")]
    NoRecurrence(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
