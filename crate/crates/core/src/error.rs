use alloc::string::String;

/// Errors raised by the exact-arithmetic, metric and construction layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cyclotomic element is not fixed by complex conjugation")]
    NotReal,
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible scalar backends: {0}")]
    IncompatibleBackends(&'static str),
    #[error("product of two non-constant formal scalars is not representable")]
    NonLinear,
    #[error("order query on a formal scalar needs a witness assignment (missing `{0}`)")]
    NoWitness(String),
    #[error("invalid witness: {0}")]
    BadWitness(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("conductor {m} exceeds the cap {cap}")]
    ConductorCap { m: u64, cap: u64 },
    #[error("input of size {n} exceeds the cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("denominator has no constant term 1")]
    ZeroConstantTerm,
    #[error("exponent {0} is not positive")]
    NonPositiveExponent(String),
    #[error("unsupported point count n = {0}")]
    BadN(usize),
    #[error("circular type violates the circular triangle inequality at (i, j) = ({i}, {j})")]
    TypeInvalid { i: i64, j: i64 },
    #[error("circular type is not strictly increasing at position {0}")]
    TypeNotIncreasing(usize),
    #[error("metric violation: {0}")]
    MetricViolation(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("linear system is possibly singular at the working precision")]
    PossiblySingular,
    #[error("inexact division in the polynomial ring")]
    InexactDivision,
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// Variant name, used as the machine-readable error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotReal => "NotReal",
            Error::BadLength { .. } => "BadLength",
            Error::DivisionByZero => "DivisionByZero",
            Error::IncompatibleBackends(_) => "IncompatibleBackends",
            Error::NonLinear => "NonLinear",
            Error::NoWitness(_) => "NoWitness",
            Error::BadWitness(_) => "BadWitness",
            Error::OutOfRange(_) => "OutOfRange",
            Error::ConductorCap { .. } => "ConductorCap",
            Error::TooLarge { .. } => "TooLarge",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::NonPositiveExponent(_) => "NonPositiveExponent",
            Error::BadN(_) => "BadN",
            Error::TypeInvalid { .. } => "TypeInvalid",
            Error::TypeNotIncreasing(_) => "TypeNotIncreasing",
            Error::MetricViolation(_) => "MetricViolation",
            Error::InvalidSpace(_) => "InvalidSpace",
            Error::UnknownName(_) => "UnknownName",
            Error::PossiblySingular => "PossiblySingular",
            Error::InexactDivision => "InexactDivision",
        }
    }
}
