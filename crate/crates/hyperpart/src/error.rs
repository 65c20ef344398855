use thiserror::Error;

/// Errors produced by the library and the CLI layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Input values violate a structural precondition (mixed cell lengths,
    /// wrong arity, non-positive coordinates, ...).
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// An argument is outside the domain of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A search exceeded its node budget. This is a clean refusal, not a
    /// partial result.
    #[error("node budget exceeded: visited more than {budget} search nodes")]
    BudgetExceeded { budget: u64 },

    /// A cached value disagrees with a freshly computed one.
    #[error("cache conflict for {key}: cached {cached}, computed {computed}")]
    CacheConflict {
        key: String,
        cached: String,
        computed: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
