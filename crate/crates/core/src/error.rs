use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge #{index}: endpoint {vertex} is not a declared vertex")]
    DanglingEndpoint { index: usize, vertex: VertexId },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
    #[error(
        "enumeration guard: graph has {edges} edges, cap is {cap} \
         (reduce the graph first, use the heuristic, or raise the cap)"
    )]
    GuardExceeded { edges: usize, cap: usize },
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(EdgeId),
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error("seed graph is not upper embeddable (xi = {xi})")]
    SeedNotUpperEmbeddable { xi: usize },
}
