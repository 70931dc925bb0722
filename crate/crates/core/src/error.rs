use thiserror::Error;

use crate::graph::Sign;

/// Errors produced by the signed-graph toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate signed edge ({0}, {1}, {2})")]
    DuplicateSignedEdge(usize, usize, Sign),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graphs must have at least one vertex")]
    EmptyGraph,
    #[error("size mismatch: {left} vs {right} vertices")]
    SizeMismatch { left: usize, right: usize },
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no color assigned to vertex {0}")]
    MissingVertexColor(usize),
    #[error("mode violation: {0}")]
    ModeViolation(String),
    #[error("part sizes must be positive")]
    EmptyPart,
    #[error("improper input coloring: {0}")]
    ImproperInput(String),
    #[error("unknown tag {0}")]
    UnknownTag(usize),
    #[error("universe cap {cap} too small for lists of size {t}")]
    CapTooSmall { cap: u32, t: usize },
    #[error("universe cap {0} exceeds the supported maximum of 63")]
    CapTooLarge(u32),
    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("bad vertex subset: {0}")]
    BadSubset(String),
    #[error("list assignment is colorable, not a bad list")]
    NotABadList,
}

pub type Result<T> = std::result::Result<T, Error>;
