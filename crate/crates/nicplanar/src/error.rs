//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while constructing, parsing or querying graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    /// An edge joins a vertex to itself.
    #[error("loop edge at vertex {vertex}")]
    LoopEdge { vertex: usize },
    /// The same unordered pair was given twice.
    #[error("duplicate edge {{{u},{v}}}")]
    DuplicateEdge { u: usize, v: usize },
    /// An endpoint is not in `0..n`.
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    /// Malformed input; `offset` is the byte position of the problem.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// The predicate needs more vertices than the graph has.
    #[error("graph has {n} vertices, at least {min} required")]
    TooSmall { n: usize, min: usize },
}

/// Errors raised by embedding construction and face tracing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    /// The rotation system does not describe a sphere.
    #[error("rotation system is not spherical: n={n} m={m} faces={faces}")]
    NonSphericalEmbedding { n: usize, m: usize, faces: usize },
    /// The rotation system is inconsistent with the planarization.
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    /// The crossing registry references something that does not exist.
    #[error("invalid crossing: {0}")]
    InvalidCrossing(String),
    /// The underlying graph is invalid.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// The embedding JSON could not be decoded.
    #[error("embedding JSON: {0}")]
    Json(String),
}

/// Errors raised by the generalized-dual module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    /// Face grouping preconditions (kites and triangulation) fail.
    #[error("not a maximal embedding: {0}")]
    NotMaximalEmbedding(String),
    /// Level computation found a node at distance greater than two, or no kite at all.
    #[error("level bound violated: {0}")]
    LevelExceedsTwo(String),
    /// A quarter sphere falls outside the admissible content bounds.
    #[error("accounting violation: {0}")]
    AccountingViolation(String),
    /// A kite flip precondition does not hold.
    #[error("kite flip precondition violated: {0}")]
    PreconditionViolated(String),
    /// Face tracing failed.
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// Errors raised by the family generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    /// The optimal family needs `k ≥ 2`.
    #[error("k={k} is too small (need k >= {min})")]
    KTooSmall { k: usize, min: usize },
    /// Parameters outside the supported range.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Errors raised by the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The input exceeds the configured vertex limit.
    #[error("graph has {n} vertices, oracle limit is {limit}")]
    LimitExceeded { n: usize, limit: usize },
    /// Exhaustive enumeration without pruning would visit too many subsets.
    #[error("unpruned search over {catalog} K4s exceeds the enumeration bound of {max}")]
    SearchTooLarge { catalog: usize, max: usize },
}
