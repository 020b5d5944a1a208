use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no inverse")]
    ZeroInverse,

    #[error("{0} is not a prime in the supported range 2..=251")]
    InvalidModulus(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty vertex set")]
    EmptyVertexSet,

    #[error("instance too large: {what} = {value} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("operation requires an undirected side-information graph")]
    DirectedInput,

    #[error("invalid circular coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid index code: {0}")]
    InvalidCode(String),

    #[error("receiver {0} cannot decode")]
    CannotDecode(usize),

    #[error("missing side information: message {0}")]
    MissingSideInfo(usize),

    #[error("codeword is not in the image of the encoder for receiver {0}")]
    InconsistentCodeword(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
