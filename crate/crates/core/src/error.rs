use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variable and term indices carried by the variants are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable lists or lengths do not match")]
    VariableMismatch,

    #[error("variable index {index} out of range for {count} variables")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid weight system: {0}")]
    InvalidWeightSystem(String),

    #[error("variable `{0}` does not occur in the polynomial")]
    MissingVariable(String),

    #[error("polynomial is not weighted homogeneous for any positive weights")]
    NotWeightedHomogeneous,

    #[error("weights are not determined by the support (solution space of dimension {dimension})")]
    AmbiguousWeights { dimension: usize },

    #[error("degree {degree} is smaller than weight {weight}")]
    DegreeUnderflow { degree: u64, weight: u64 },

    #[error("{count} variables exceed the subset enumeration limit of {limit}")]
    SubsetOverflow { count: usize, limit: usize },

    #[error("Hilbert series quotient is not a polynomial")]
    NotPolynomial,

    #[error("polynomial is not homogeneous of degree {degree} for the given weights")]
    NotHomogeneous { degree: u64 },

    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },

    #[error("the singularity is not isolated (Milnor algebra is infinite dimensional)")]
    NotIsolated,
}

pub type Result<T> = std::result::Result<T, Error>;
