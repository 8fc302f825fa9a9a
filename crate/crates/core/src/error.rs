use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Mismatched dimensions, out-of-range symbols, or otherwise invalid arguments.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A configured enumeration cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// An operation was invoked outside its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The requested invariant is not defined for this input (e.g. δ of a singleton).
    #[error("undefined invariant: {0}")]
    UndefinedInvariant(String),
    /// A structural invariant failed during a computation.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
