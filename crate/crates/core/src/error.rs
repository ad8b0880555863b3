use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph has no edges")]
    EmptyGraph,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("requested {m} edges but only {pairs} vertex pairs exist")]
    MTooLarge { m: u64, pairs: u64 },

    #[error("rate out of range: {0}")]
    RateOutOfRange(String),

    #[error("need at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },

    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),

    #[error("vertex {0} is isolated; the normalized Laplacian is undefined")]
    IsolatedVertex(usize),

    #[error("input size {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("no convergence after {iterations} iterations (best estimate {estimate})")]
    NoConvergence { estimate: f64, iterations: usize },

    #[error("c must exceed 1, got {0}")]
    COutOfRange(f64),

    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsOutOfRange(f64),

    #[error("graphs have different edge counts ({0} vs {1})")]
    DifferentM(usize, usize),

    #[error("graphs must differ")]
    IdenticalGraphs,

    #[error("graphs have different vertex counts ({0} vs {1})")]
    DifferentN(usize, usize),

    #[error("invalid edge subset: {0}")]
    InvalidEdgeSubset(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
