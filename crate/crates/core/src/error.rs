use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("matrix entry count {entries} does not match dimension {dim}")]
    MalformedMatrix { dim: usize, entries: usize },

    #[error("hadamard power must be at least 1")]
    ZeroHadamardPower,

    #[error("variable index {index} outside 1..={arity}")]
    VarIndexOutOfRange { index: usize, arity: usize },

    #[error("input has {found} bits, expected {expected}")]
    InputLength { expected: usize, found: usize },

    #[error("invalid bit character {0:?}")]
    InvalidBit(char),

    #[error("arity {0} must be even and at least 2")]
    OddArity(usize),

    #[error("arity {arity} exceeds the supported maximum of {max}")]
    ArityTooLarge { arity: usize, max: usize },

    #[error("stage {stage} is invalid for dimension {dim}")]
    InvalidStage { stage: usize, dim: usize },

    #[error("{what} is not unitary (max deviation {deviation:.3e})")]
    NonUnitary { what: String, deviation: f64 },

    #[error("truth table has {found} entries, expected {expected}")]
    TruthTableLength { expected: usize, found: usize },

    #[error("strings have different lengths ({y} and {z})")]
    StringLengthMismatch { y: usize, z: usize },

    #[error("strings must be non-empty")]
    EmptyString,

    #[error("oracle failed on x{index}: {message}")]
    Oracle { index: usize, message: String },

    #[error("unsupported document schema version {0}")]
    UnsupportedSchema(u32),

    #[error("invalid document: {0}")]
    Document(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
