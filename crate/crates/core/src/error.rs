use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("form is not homogeneous")]
    NotHomogeneous,

    #[error("basis index {index} is out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown structure `{0}`")]
    UnknownStructure(String),

    #[error("structure `{name}` does not support n = {n}")]
    UnsupportedDimension { name: String, n: usize },

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("unknown form `{0}`")]
    UnknownForm(String),

    #[error("no value supplied for parameter `{0}`")]
    MissingParameter(String),

    #[error("value of the operator on `{generator}` is not expressible in the algebra")]
    NotInAlgebra { generator: String },

    #[error("operator value on `{generator}` has degree {found}, expected {expected}")]
    DegreeMismatch {
        generator: String,
        expected: usize,
        found: usize,
    },

    #[error("form `{form}` is not invariant under `{algebra}`")]
    NotInvariant { form: String, algebra: String },

    #[error("Lie algebra `{0}`: {1}")]
    InvalidLieAlgebra(String, String),

    #[error("Casimir decomposition requires a three-dimensional algebra, found dimension {0}")]
    NotSo3(usize),

    #[error("Casimir operator does not act as a scalar on T")]
    CasimirNotScalar,

    #[error("Casimir eigenspaces do not account for the whole space ({accounted} of {total})")]
    CasimirIncomplete { accounted: usize, total: usize },

    #[error("subspace is not a coordinate subspace")]
    NonCoordinateSubspace,

    #[error("the algebra A differs from the full invariant algebra in degree {degree}")]
    IncompleteAlgebra { degree: usize },

    #[error("Cartan's inequality violated: sum of c(W_k) = {sum} exceeds codim Z_0 = {codim}")]
    CartanInequality { sum: usize, codim: usize },

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("bracket table is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),

    #[error("{0}")]
    Invalid(String),
}
