use thiserror::Error;

use crate::points::PointId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("point index {index} out of range for a set of {n} points")]
    Index { index: usize, n: usize },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("rows {first} and {second} are identical")]
    Duplicate { first: usize, second: usize },

    #[error("projection exceeded the pivot limit of {limit}")]
    IterationLimit { limit: usize },

    #[error("projection stalled with KKT residual {kkt_residual:e} above tolerance {tolerance:e}")]
    Stalled { kkt_residual: f64, tolerance: f64 },

    /// A projection failed while the hull driver was processing `point`.
    #[error("projection failed while processing point {point}: {source}")]
    Projection {
        point: PointId,
        #[source]
        source: Box<Error>,
    },

    /// The hull loop observed behavior that exact arithmetic rules out.
    #[error("numerical breakdown at point {point}, step {step}: {detail}")]
    Breakdown {
        point: PointId,
        step: usize,
        detail: String,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
