use thiserror::Error;

/// Errors surfaced by the core library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed values: duplicate letters, out-of-range ranks, bad occurrences, parse failures.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A checker or operation was invoked outside its stated domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A memory or exploration budget would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
