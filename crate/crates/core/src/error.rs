use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed tables, out-of-range elements, mismatched carriers.
    #[error("invalid {field}: {reason}")]
    Input { field: String, reason: String },

    /// A configured size cap would be exceeded.
    #[error("{what} exceeds limit: {value} > {limit}")]
    Limit {
        what: String,
        value: u128,
        limit: u128,
    },

    /// An operation was called on an algebra or topology that does not
    /// satisfy what the operation requires.
    #[error("precondition `{check}` does not hold: {detail}")]
    Precondition { check: String, detail: String },

    /// Something that the theory guarantees did not happen.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn limit(what: impl Into<String>, value: u128, limit: u128) -> Self {
        Error::Limit {
            what: what.into(),
            value,
            limit,
        }
    }

    pub(crate) fn precondition(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Precondition {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
