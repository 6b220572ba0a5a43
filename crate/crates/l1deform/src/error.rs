use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("scalar ring is not a field: {0}")]
    NotAField(String),
    #[error("incompatible scalar rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("monomial degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("index {0} is outside the algebra")]
    InvalidIndex(i64),
    #[error("mismatched spaces: {0}")]
    SpaceMismatch(String),
    #[error("tuple {tuple:?} outside validity window (sum bound {bound}) of `{name}`")]
    OutOfWindow { name: String, tuple: Vec<i64>, bound: i64 },
    #[error("expected {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degree/weight mismatch: {0}")]
    GradingMismatch(String),
    #[error("coefficient extraction inconsistent for a({k},{l},{s},{t})")]
    Inconsistent { k: i64, l: i64, s: i64, t: i64 },
    #[error("window {window} too small for exception bound {bound}")]
    WindowTooSmall { window: i64, bound: i64 },
    #[error("cochain `{0}` is not closed on the test window")]
    NotClosed(String),
    #[error("certificate failed to re-verify: {0}")]
    Certificate(String),
    #[error("cancellation failure: {0}")]
    Cancellation(String),
    #[error("truncation insufficient: {0}")]
    Truncation(String),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
