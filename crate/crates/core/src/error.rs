use thiserror::Error;

use crate::vertex_set::VertexId;

/// Errors raised by graph construction, parsing and the brute-force limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: VertexId, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("n = {n} exceeds the configured cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("time budget of {0:?} exhausted")]
    TimeBudgetExceeded(std::time::Duration),
    #[error("unsatisfiable request: {0}")]
    Unsatisfiable(String),
    #[error("vertex {0} is not a member of the set")]
    NotAMember(VertexId),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
