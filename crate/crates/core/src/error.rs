use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bad argument: out-of-range vertex, color, parameter.
    #[error("usage: {0}")]
    Usage(String),
    /// The input does not satisfy what the operation requires.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The request exceeds a hard enumeration budget.
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("invalid: {0}")]
    Validation(String),
    #[error("conflict: pair ({u}, {v}) would need two colors")]
    Conflict { u: usize, v: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn capability(msg: impl Into<String>) -> Error {
    Error::Capability(msg.into())
}

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
