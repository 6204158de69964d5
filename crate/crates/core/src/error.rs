use thiserror::Error;

/// Errors raised while constructing or querying digital images and maps.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("adjacency parameter u={u} out of range for dimension {dim}")]
    UOutOfRange { u: usize, dim: usize },

    #[error("point {0} is not a point of the image")]
    PointNotInImage(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("start point is not in the fiber of the first base point")]
    StartNotInFiber,

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("empty subset is not a subimage")]
    EmptySubset,

    #[error("file format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
