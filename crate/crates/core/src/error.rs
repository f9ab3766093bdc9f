use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a prechromotopology: {0}")]
    NotAPrechromotopology(String),

    #[error("color {color} does not decompose the graph: codeword {codeword} has bit {color} set")]
    NotDecomposable { color: usize, codeword: String },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("no odd dashing exists: {0}")]
    NoOddDashing(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot {action} vertex {vertex}: it is not a {required}")]
    FlipNotAllowed {
        action: &'static str,
        vertex: usize,
        required: &'static str,
    },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
