use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Mismatched operands or an unsupported request.
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },
    /// An algorithm reached a state its invariants rule out.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
