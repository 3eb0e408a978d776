use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A size guard refused the instance. The instance is not wrong, only too big.
    #[error("guard refused {what}: {actual} exceeds limit {limit}")]
    Guard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("enumeration limit {limit} exceeded ({found} items found before stopping)")]
    LimitExceeded { limit: usize, found: usize },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn guard(what: &'static str, limit: usize, actual: usize) -> Result<()> {
        if actual > limit {
            Err(Error::Guard { what, limit, actual })
        } else {
            Ok(())
        }
    }

    /// True for refusals caused by size limits rather than bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Guard { .. } | Error::LimitExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
