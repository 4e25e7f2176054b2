use thiserror::Error;

/// Errors raised by lattice, Mukai, isometry, cohomology and pseudoheight operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector/lattice rank mismatch: expected {expected}, got {actual}")]
    RankMismatch { expected: usize, actual: usize },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("label count {labels} does not match rank {rank}")]
    LabelCount { labels: usize, rank: usize },

    #[error("ambient lattice degenerate")]
    DegenerateAmbient,

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("operation requires rank {expected}, lattice has rank {actual}")]
    WrongRank { expected: usize, actual: usize },

    #[error("picard lattice is not even: diagonal entry {0} is odd")]
    OddPicard(usize),

    #[error("polarization must have positive self-pairing, got {0}")]
    NonPositivePolarization(String),

    #[error("class has odd square {0}")]
    OddSquare(String),

    #[error("slope undefined: {0}")]
    SlopeUndefined(&'static str),

    #[error("model mismatch: {0} vs {1}")]
    ModelMismatch(String, String),

    #[error("(v,v) ≠ −2: class {vector} has square {square}")]
    NotSpherical { vector: String, square: String },

    #[error("matrix is not an isometry of the Mukai lattice")]
    NotIsometry,

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,

    #[error("isometry is not an involution")]
    NotInvolution,

    #[error("unknown token `{0}`")]
    UnknownToken(String),

    #[error("parse error in `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("unknown class label `{0}`")]
    UnknownLabel(String),

    #[error("m must be at least {min}, got {got}")]
    BadModulus { min: i64, got: i64 },

    #[error("invalid invariant factor {0}")]
    BadInvariantFactor(u64),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("unknown model `{0}`")]
    UnknownModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
