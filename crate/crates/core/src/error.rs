use thiserror::Error;

use crate::funcspec::{EvalError, ParseError};

pub type Result<T, E = PseudoError> = std::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PseudoError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("generator validation failed: {0}")]
    Validation(String),

    #[error("inverse solve for image {target} did not converge within {iterations} iterations")]
    Convergence { target: f64, iterations: usize },

    #[error("division by 0_g (divisor image {0:e})")]
    DivisionByZeroG(f64),

    #[error("pseudo-logarithm undefined for image {0:e}")]
    LogDomain(f64),

    #[error("non-finite value in {0}")]
    Numeric(String),

    #[error("quadrature on [{a}, {b}] hit depth cap {max_depth} without converging")]
    DepthExceeded { a: f64, b: f64, max_depth: usize },

    #[error("negative weight {value:e} at x = {x}")]
    NegativeWeight { x: f64, value: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unknown inequality `{0}`")]
    UnknownInequality(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl PseudoError {
    /// Short stable identifier, used in CSV error columns.
    pub fn kind(&self) -> &'static str {
        match self {
            PseudoError::Domain(_) => "DomainError",
            PseudoError::Range(_) => "RangeError",
            PseudoError::Validation(_) => "ValidationError",
            PseudoError::Convergence { .. } => "ConvergenceError",
            PseudoError::DivisionByZeroG(_) => "DivisionByZeroG",
            PseudoError::LogDomain(_) => "LogDomainError",
            PseudoError::Numeric(_) => "NumericError",
            PseudoError::DepthExceeded { .. } => "DepthExceeded",
            PseudoError::NegativeWeight { .. } => "NegativeWeight",
            PseudoError::Parameter(_) => "ParameterError",
            PseudoError::UnknownInequality(_) => "UnknownInequality",
            PseudoError::Config(_) => "ConfigError",
            PseudoError::Parse(_) => "ParseError",
            PseudoError::Eval(_) => "EvalError",
        }
    }
}
