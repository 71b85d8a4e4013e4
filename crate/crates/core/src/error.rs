use thiserror::Error;

use crate::hypergraph::{Edge, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be positive, got {0}")]
    InvalidVertexCount(i64),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: i64, n: u32 },
    #[error("empty edge at input position {0}")]
    EmptyEdge(usize),
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<i64>),
    #[error("clutter violation: {sub:?} is contained in {sup:?}")]
    ClutterViolation { sub: Edge, sup: Edge },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Edge),
    #[error("edge index {index} out of range (hypergraph has {len} edges)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("hypergraph is not k-uniform for any k >= 2")]
    NotUniform,
    #[error("hypergraph is not a tree")]
    NotATree,
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("search budget exceeded; pmd lies in [{lower}, {upper}]")]
    BudgetExceeded { lower: usize, upper: usize },
    #[error("star decomposition violated: {0}")]
    StarDecompositionViolation(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("n must be at least 3, got {0}")]
    NTooSmall(u32),
    #[error("d must be at least 1, got {0}")]
    InvalidD(usize),
    #[error("pivot vertex {0} is isolated")]
    PivotIsolated(Vertex),
    #[error("minor size {t} out of range 1..={max}")]
    TOutOfRange { t: usize, max: usize },
    #[error("status flags contradict each other (prime and not prime)")]
    ContradictionDetected,
    #[error("certificate shape does not match the system: {0}")]
    ShapeMismatch(String),
    #[error("row {0} is not a strict homogeneous inequality")]
    NotHomogeneousStrict(usize),
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("value does not fit in 128 bits: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}
