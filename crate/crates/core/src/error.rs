use thiserror::Error;

use crate::brace::BraceViolation;
use crate::solution::SolutionViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Solution(#[from] SolutionViolation),

    #[error(transparent)]
    Brace(#[from] BraceViolation),

    /// Two routes to the same property disagreed.
    #[error("equivalence mismatch: {0}")]
    Mismatch(String),
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
