use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: conductor {left} vs {right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("inputs must be distinct: {0}")]
    EqualInputs(&'static str),
    #[error("the zero vector is not a projective {0}")]
    ZeroVector(&'static str),
    #[error("lines {first} and {second} are proportional")]
    DuplicateLine { first: usize, second: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed file {path}: {message}")]
    Format { path: String, message: String },
}
