use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot multiply an ordered bar-monomial with a commutative one")]
    MixedFlavor,

    #[error("basis kinds differ: {left} vs {right}")]
    BasisMismatch { left: String, right: String },

    #[error("index {index} out of range for a word of degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("ground set of size {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("partition {0} is not noncrossing")]
    NotNoncrossing(String),

    #[error("half-coproducts are only defined on the augmentation ideal")]
    UnitInput,

    #[error("splitting is not adapted: {0}")]
    NotAdapted(String),

    #[error("degree {degree} exceeds the available maximum degree {max}")]
    DegreeExceeded { degree: usize, max: usize },

    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("half-shuffle of two unital arguments is undefined")]
    UndefinedBoundary,

    #[error("linear form is not unital (value at the unit is {0})")]
    NonUnital(String),

    #[error("moment table is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("letter {0} lies outside the table's alphabet")]
    UnknownLetter(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
