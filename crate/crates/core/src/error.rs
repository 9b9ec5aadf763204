use thiserror::Error;

/// Errors raised by the slope calculus and the rule engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A string could not be read as a slope, rational or record.
    #[error("parse error: {0}")]
    Parse(String),

    /// An operation was called outside its precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// No rule applies, or the record lacks the data a rule needs.
    #[error("no rule applies: {0}")]
    NoRule(String),

    /// A named record is absent from the database.
    #[error("not found: {0}")]
    NotFound(String),

    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
