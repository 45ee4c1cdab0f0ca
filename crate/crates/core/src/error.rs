use thiserror::Error;

/// Errors reported by the library. Vertex indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown Lie type `{0}`")]
    UnknownType(String),

    #[error("type {family}{rank} is not a valid finite type")]
    InvalidRank { family: char, rank: usize },

    #[error("vertex {vertex} is out of range for a rank {rank} diagram")]
    VertexOutOfRange { vertex: usize, rank: usize },

    #[error("invalid vertex list `{0}`")]
    BadSubset(String),

    #[error("parabolic subset may not contain every simple root")]
    FullParabolic,

    #[error("vector of length {got} does not match rank {rank}")]
    DimensionMismatch { got: usize, rank: usize },

    #[error("move {step}: vertex {vertex} is not unhappy")]
    IllegalMove { step: usize, vertex: usize },

    #[error("word is not reduced at letter {position}")]
    NotReduced { position: usize },

    #[error("word does not represent a minimal coset representative (letter {position})")]
    NotMinimal { position: usize },

    #[error("simple root {beta} is not adjacent to the given component")]
    NotAdjacent { beta: usize },

    #[error("string context mismatch: {0}")]
    ContextMismatch(String),

    #[error("arrow count must be positive")]
    ZeroArrows,

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
