use thiserror::Error;

/// Errors produced by graph construction, parsing, and analysis.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum Error {
    /// Input text could not be parsed. Carries the 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A vertex name was referenced but never declared.
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),

    /// The same vertex name was declared twice.
    #[error("duplicate vertex: {0}")]
    DuplicateVertex(String),

    /// The same directed edge was added twice.
    #[error("duplicate edge: {0} -> {1}")]
    DuplicateEdge(String, String),

    /// No root (output) vertex was declared.
    #[error("graph has no root vertex")]
    MissingRoot,

    /// The graph contains a directed cycle (self-loops included).
    #[error("graph contains a cycle")]
    Cycle,

    /// An operation was given an empty vertex set.
    #[error("vertex set is empty")]
    EmptyVertexSet,

    /// A merge/fake-source construction included the root itself.
    #[error("vertex set contains the root")]
    RootInSet,

    /// Disjoint-path search was asked for paths from a vertex to itself.
    #[error("source equals sink")]
    SourceIsSink,

    /// No path exists between the two vertices.
    #[error("no path from {0} to {1}")]
    Unreachable(String, String),

    /// Dominator analysis was requested for the root vertex itself.
    #[error("source is the root; dominators are undefined")]
    SourceIsRoot,

    /// A pair set does not correspond to any dominator chain.
    #[error("inconsistent pair set: {0}")]
    InconsistentPairSet(String),
}

pub type Result<T> = std::result::Result<T, Error>;
