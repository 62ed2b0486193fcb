use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph has no edges")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("invalid sign {0:?}: expected +1 or -1")]
    InvalidSign(String),
    #[error("graph is disconnected: vertex {0} is unreachable from {1}")]
    Disconnected(String, String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("function has {got} values, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("p-Laplacian domain violation at vertex {vertex}: zero signed difference towards neighbor {neighbor} with p = {p}")]
    Domain { vertex: usize, neighbor: usize, p: f64 },
    #[error("function vanishes identically")]
    ZeroFunction,
    #[error("size limit exceeded: {what} has {size}, limit is {limit}")]
    SizeLimit { what: &'static str, size: usize, limit: usize },
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("optimization did not converge: {0}")]
    OptimizationFailed(String),
    #[error("curvature bracket failure: K outside [{lo}, {hi}] at vertex {vertex}")]
    Bracket { vertex: usize, lo: f64, hi: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
