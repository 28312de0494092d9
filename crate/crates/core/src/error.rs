use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed user input (a difference set or a subword).
    #[error("parse error at token `{token}`: {reason}")]
    Parse { token: String, reason: String },

    /// A brute-force or state-space limit was exceeded.
    #[error("capacity exceeded: {what} = {value} is above the cap of {cap}")]
    Capacity {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    /// A recurrence constructor was handed a digraph of the wrong class.
    #[error("expected a digraph of class {expected}, found {actual}")]
    WrongClass {
        expected: &'static str,
        actual: String,
    },

    /// An operation's precondition does not hold for the given input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A family constructor's hypothesis is violated.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn capacity(what: &'static str, value: impl Into<u64>, cap: impl Into<u64>) -> Error {
    Error::Capacity {
        what,
        value: value.into(),
        cap: cap.into(),
    }
}
