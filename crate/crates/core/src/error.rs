use thiserror::Error;

use crate::graph::Vertex;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("pair ({0}, {1}) is not an edge of the host graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("{0} must be non-empty")]
    Empty(&'static str),
    #[error("invalid problem spec: {0}")]
    InvalidSpec(String),
    #[error("inapplicable parameters: {0}")]
    Inapplicable(String),
    #[error("instance too large: n = {n} exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("certificate rejected: {0}")]
    Unverified(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
