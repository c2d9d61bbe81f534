use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed graph6 (or other textual) input.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An exhaustive routine was asked to run above its documented size limit.
    #[error("unsupported size: {what} is {got}, limit is {limit}")]
    Unsupported {
        what: &'static str,
        limit: u128,
        got: u128,
    },

    #[error("corrupt state: {0}")]
    CorruptState(String),

    /// A mathematical invariant failed; this indicates a bug, never bad input.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn unsupported(what: &'static str, limit: impl Into<u128>, got: impl Into<u128>) -> Self {
        Error::Unsupported {
            what,
            limit: limit.into(),
            got: got.into(),
        }
    }
}
