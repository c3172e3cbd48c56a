use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("operation requires a non-empty graph")]
    EmptyGraph,

    #[error("vertex set built for {found} vertices used with a graph of {expected}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no simple graph produced after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("instance has {n} vertices, above the oracle cap of {cap}")]
    Capacity { n: usize, cap: usize },

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("vertex set is not a {k}-limited packing")]
    NotAPacking { k: usize },

    #[error("logarithm of zero binomial coefficient C({a}, {b})")]
    LogOfZero { a: u64, b: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
