use thiserror::Error;

use crate::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} has no successor")]
    DeadEnd(VertexId),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("priority {priority} of vertex {vertex} is not in {{-1, 0, 1}}")]
    InvalidPriority { vertex: VertexId, priority: i64 },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("instance too large for exhaustive search: {n} vertices (limit {limit})")]
    SizeGuard { n: usize, limit: usize },
    #[error("vertex set is not strongly connected from {0}")]
    NotStronglyConnected(VertexId),
    #[error("vertex set is not a good component: {0}")]
    NotGood(String),
    #[error("vertex {0} cannot reach the target component")]
    Unreachable(VertexId),
    #[error("removed set is not a subset of the maintained set (vertex {0})")]
    NotSubset(VertexId),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
