//! Evaluation engine for the bibasic Humbert hypergeometric function
//! `Phi1(q^a, q1^b; q^c; q, q1, x, y)` on two independent bases, in double
//! precision (real or complex) and in exact rational arithmetic, together with
//! a data-driven harness that checks its contiguous relations, q-derivative
//! formulas and summation formula.
//!
//! All computations are generic over [`Scalar`]; the aliases below name the
//! two modes used in practice.

pub mod error;
pub mod identities;
pub mod phi1;
pub mod qcore;
pub mod scalar;

pub use error::{ErrorClass, QError, Result};
pub use phi1::{Arguments, CoeffTable, EvalResult, Phi1Params, SeriesOptions};
pub use qcore::{Base, BasePower, QBases};
pub use scalar::Scalar;

/// Float-mode scalar.
pub type C64 = num_complex::Complex<f64>;
/// Exact-mode scalar.
pub type Rational = num_rational::BigRational;

pub type FloatParams = Phi1Params<C64>;
pub type ExactParams = Phi1Params<Rational>;
pub type FloatArguments = Arguments<C64>;
pub type ExactArguments = Arguments<Rational>;
pub type ExactCoeffTable = CoeffTable<Rational>;
