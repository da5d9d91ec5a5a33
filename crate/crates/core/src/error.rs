use thiserror::Error;

/// Every failure mode of the library. Computational code never panics on
/// user-reachable input; it reports one of these instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar tag mismatch: {0} vs {1}")]
    TagMismatch(&'static str, &'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("series constant term is not invertible")]
    NonInvertibleConstantTerm,
    #[error("series exponential needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("repeated interpolation nodes at positions {0} and {1}")]
    RepeatedNodes(usize, usize),
    #[error("psi-factorial {0}! vanishes")]
    ZeroFactorial(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("series is not known to converge for sequence {0}")]
    NotConvergent(String),
    #[error("insufficient terms: last term {last} is not below {bound}")]
    InsufficientTerms { last: String, bound: String },
    #[error("singular normal-ordering system: {0}")]
    SingularSystem(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable kind, used in the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TagMismatch(..) => "TagMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NonInvertibleConstantTerm => "NonInvertibleConstantTerm",
            Error::NonzeroConstantTerm => "NonzeroConstantTerm",
            Error::RepeatedNodes(..) => "RepeatedNodes",
            Error::ZeroFactorial(_) => "ZeroFactorial",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::NotConvergent(_) => "NotConvergent",
            Error::InsufficientTerms { .. } => "InsufficientTerms",
            Error::SingularSystem(_) => "SingularSystem",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
