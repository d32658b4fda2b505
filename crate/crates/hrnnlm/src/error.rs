use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("degenerate distribution: no finite logit")]
    DegenerateDistribution,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("state budget exceeded: more than {limit} reachable hidden states")]
    BudgetExceeded { limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("simulation corrupt: {0}")]
    SimulationCorrupt(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("scorers use different alphabets")]
    AlphabetMismatch,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
