use thiserror::Error;

/// Errors raised by the q-calculus primitives, the series engine and the
/// identity harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("non-finite value produced in {context}")]
    NonFinite { context: &'static str },

    #[error("q-Pochhammer length {k} exceeds the cap of {cap}")]
    PochhammerCap { k: usize, cap: usize },

    #[error("invalid base {name} = {value}: require 0 < |{name}| < 1")]
    InvalidBase { name: &'static str, value: String },

    #[error("base must differ from 1")]
    UnitBase,

    #[error("parameter {name} must be a power of {expected}")]
    BaseMismatch {
        name: &'static str,
        expected: &'static str,
    },

    #[error("pole: 1 - q^c q^{index} vanishes")]
    Pole { index: usize },

    #[error("argument {name} = {value} lies outside the open unit disc")]
    Domain { name: &'static str, value: String },

    #[error("Jackson derivative is undefined at x = 0")]
    JacksonAtZero,

    #[error("series did not converge after {terms} terms (last diagonal magnitude {last_magnitude:e})")]
    NoConvergence { terms: usize, last_magnitude: f64 },

    #[error("integer exponent required for parameter {name} in exact mode")]
    MissingExponent { name: &'static str },

    #[error("coefficient denominator `{expr}` vanishes at this point")]
    ZeroDenominator { expr: String },

    #[error("cannot divide a series by the non-constant expression `{expr}`")]
    NonConstantDivisor { expr: String },

    #[error("invalid series options: {0}")]
    InvalidOptions(String),
}

/// Coarse classification used for exit codes and report diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorClass {
    Domain,
    Convergence,
    Precondition,
}

impl QError {
    pub fn class(&self) -> ErrorClass {
        match self {
            QError::NoConvergence { .. } => ErrorClass::Convergence,
            QError::Pole { .. }
            | QError::Domain { .. }
            | QError::InvalidBase { .. }
            | QError::UnitBase
            | QError::JacksonAtZero
            | QError::DivisionByZero
            | QError::NonFinite { .. } => ErrorClass::Domain,
            _ => ErrorClass::Precondition,
        }
    }
}

pub type Result<T, E = QError> = std::result::Result<T, E>;
