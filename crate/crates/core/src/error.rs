use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad reduction at p = {p}")]
    BadReduction { p: u64 },
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("factorization incomplete, composite cofactor {cofactor} survived the budget")]
    IncompleteFactorization { cofactor: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BadReduction { .. } => "BadReduction",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::IncompleteFactorization { .. } => "IncompleteFactorization",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NotSquarefree => "NotSquarefree",
            Error::NotOnCurve => "NotOnCurve",
            Error::NotPrime(_) => "NotPrime",
            Error::Degenerate(_) => "Degenerate",
            Error::Inconsistent(_) => "Inconsistent",
            Error::Parse(_) => "Parse",
        }
    }

    pub(crate) fn cap(what: &'static str, value: u64, cap: u64) -> Error {
        Error::CapExceeded { what, value, cap }
    }
}
