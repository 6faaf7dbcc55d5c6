use thiserror::Error;

/// Errors shared by the cone, LP, and map operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("operation requires an optimal solution")]
    NotOptimal,

    #[error("vector is not a member of the positive cone")]
    NotInCone,

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("functional is outside the effect interval: {0}")]
    NotAnEffect(String),

    #[error("decomposition parts do not difference to the target vector")]
    DecompositionMismatch,

    #[error("cone fails validation: {0}")]
    InvalidCone(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the given pair is not orthogonal")]
    NotOrthogonal,

    #[error("matrix is not symmetric within tolerance")]
    NotSymmetric,

    #[error("matrix is not positive semidefinite within tolerance")]
    NotPositiveSemidefinite,
}

pub type Result<T> = std::result::Result<T, Error>;
