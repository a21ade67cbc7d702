use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("variable {0} does not occur")]
    MissingVariable(String),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree beyond supported factorization range: {0}")]
    UnsupportedRange(String),
    #[error("reducible input: {0}")]
    Reducible(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("index is not positive (m.s.index = {0}); the degree bound does not apply")]
    NonPositiveIndex(i64),
    #[error("common factor detected")]
    CommonFactor,
    #[error("resource budget exhausted: {0}")]
    Budget(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::MissingVariable(_) => "missing_variable",
            Error::ZeroInput(_) => "zero_input",
            Error::NotHomogeneous => "not_homogeneous",
            Error::UnsupportedRange(_) => "unsupported_range",
            Error::Reducible(_) => "reducible_input",
            Error::SingularMatrix => "singular_matrix",
            Error::NotOnCurve => "not_on_curve",
            Error::Precondition(_) => "precondition",
            Error::NonPositiveIndex(_) => "nonpositive_index",
            Error::CommonFactor => "common_factor",
            Error::Budget(_) => "resource_budget",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
