use thiserror::Error;

/// Errors produced by graph parsing, algebra construction, and the
/// various bounded computations.
#[derive(Debug, Error)]
pub enum GalgError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty vertex subset")]
    EmptyVertexSubset,

    #[error("edge subset is not a forest")]
    NotAForest,

    #[error("tree algebra requires connected graph")]
    DisconnectedTree,

    #[error("{what} bound exceeded: {value} > {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("ambient algebra mismatch")]
    AmbientMismatch,

    #[error("invalid edge index {0}")]
    InvalidEdge(usize),

    #[error("invalid vertex {0}")]
    InvalidVertex(usize),

    #[error("polynomial has nonzero constant term")]
    NonzeroConstantTerm,

    #[error("invalid polynomial: {0}")]
    BadPolynomial(String),

    #[error("not nilpotent")]
    NotNilpotent,

    #[error("coefficients must be pairwise distinct and nonzero")]
    BadCoefficients,

    #[error("not a consistent vertex-generator family")]
    InconsistentFamily,

    #[error("generator is not homogeneous of degree 1")]
    NonHomogeneous,

    #[error("inconsistent degree data for edge multiplicity")]
    DegreeInconsistency,

    #[error("generic series requires at least 2 seeds")]
    InsufficientSeeds,
}

pub type Result<T> = std::result::Result<T, GalgError>;
