//! Error type shared across the crate.

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operand shapes do not line up for the named operation.
    #[error("dimension mismatch in {op}: left shape {left:?}, right shape {right:?}")]
    Dimension {
        op: &'static str,
        left: Vec<usize>,
        right: Vec<usize>,
    },

    /// An operation that reduces over a sequence axis received length zero.
    #[error("empty sequence axis in {op}")]
    EmptySequence { op: &'static str },

    /// Invalid configuration (bad rank, group layout, top-k, config file field).
    #[error("configuration error: {0}")]
    Config(String),

    /// A caller broke an API contract (mismatched decision/output counts,
    /// untagged routing decision, non-scalar loss).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Repeated evaluation of a supposedly deterministic function disagreed.
    #[error("non-deterministic function: first evaluation {first}, second {second}")]
    NonDeterministic { first: f64, second: f64 },

    /// A computation produced NaN/Inf or otherwise left the finite domain.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Bad input data (labels out of range, malformed checkpoint payload).
    #[error("data error: {0}")]
    Data(String),

    #[error("I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
