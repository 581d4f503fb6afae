use num_bigint::BigInt;

/// Errors shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("quadratic surds have incompatible radicands {0} and {1}")]
    IncompatibleRadicands(BigInt, BigInt),
    #[error("cannot take a real square root of a negative rational")]
    NegativeRadicand,
    #[error("unsupported genus {0}: the construction needs an even genus with 6 <= g <= 12")]
    UnsupportedGenus(i64),
    #[error("unknown catalog object `{0}`")]
    UnknownObject(String),
    #[error("ch3 is required here but unset")]
    MissingCh3,
    #[error("Todd class is not fully specified")]
    MissingTodd,
    #[error("the zero class has no reduced point")]
    ZeroClass,
    #[error("alpha^2 must be positive")]
    NonPositiveAlphaSq,
    #[error("not in region: {0}")]
    OutsideRegion(String),
    #[error("slope denominator is negative: class not in heart orientation, shift it first")]
    NegativeDenominator,
    #[error("slope is 0/0")]
    ZeroOverZero,
    #[error("the line misses the parabola: negative discriminant")]
    NoRealIntersection,
    #[error("the line through the two points is vertical")]
    VerticalLine,
    #[error("charge matrix is singular")]
    SingularCharge,
    #[error("transform has non-positive determinant")]
    NotOrientationPreserving,
    #[error("class is not in the lattice span: {0}")]
    NotInLattice(String),
    #[error("figure window is empty")]
    EmptyWindow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
