use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input {0} has no incident edge (Def-1 violation)")]
    IsolatedInput(usize),
    #[error("output {0} has no incident edge (Def-1 violation)")]
    IsolatedOutput(usize),
    #[error("edge ({0}, {1}) out of range")]
    EdgeOutOfRange(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} cap exceeded: {size} > {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("positivity precondition violated: {0}")]
    NotPositive(String),
    #[error("malformed channel file: {0}")]
    Format(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
