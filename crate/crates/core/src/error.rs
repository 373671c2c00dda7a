use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("form is not antisymmetric: {0}")]
    NotAntisymmetric(String),

    #[error("vectors are linearly dependent")]
    DependentBasis,

    #[error("subspaces are not nested")]
    NotNested,

    #[error("ambient form is degenerate")]
    DegenerateForm,

    #[error("matrix is not nilpotent (not in the nilpotent cone)")]
    NotNilpotent,

    #[error("matrix is singular")]
    Singular,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("not a Lie subalgebra: {0}")]
    NotASubalgebra(String),

    #[error("vector is not tangent to the orbit at the base point")]
    NotTangent,

    #[error("rank {0} is too large for permutation enumeration (limit 8)")]
    TooLarge(usize),

    #[error("interval bounds crossed: lower {lower} > upper {upper}")]
    UnsoundInterval { lower: usize, upper: usize },

    #[error("tangent bounds out of order: {0}")]
    BoundViolation(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
