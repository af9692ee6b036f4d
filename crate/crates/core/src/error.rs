use thiserror::Error;

/// Errors produced by tensor construction, verification and bound computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),

    #[error("dimension mismatch on party {party}: expected {expected}, found {found}")]
    DimensionMismatch {
        party: usize,
        expected: usize,
        found: usize,
    },

    #[error("index {index:?} out of bounds for shape {shape:?}")]
    IndexOutOfBounds { index: Vec<usize>, shape: Vec<usize> },

    #[error("duplicate index {0:?}")]
    DuplicateIndex(Vec<usize>),

    #[error("zero coefficient stored at {0:?}")]
    ZeroCoefficient(Vec<usize>),

    #[error("{0:?} is not a permutation of the party positions")]
    NotAPermutation(Vec<usize>),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("relabeling search space exhausted the node budget ({cap} nodes)")]
    SearchSpaceExceeded { cap: u64 },

    #[error("equation unsolvable: {0}")]
    Unsolvable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
