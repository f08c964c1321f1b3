//! The bibasic Humbert series
//!
//! ```text
//! Phi1(q^a, q1^b; q^c; q, q1, x, y)
//!     = sum_{l,k >= 0} (q^a; q)_{l+k} (q1^b; q1)_l
//!                      / [(q^c; q)_{l+k} (q1; q1)_l (q; q)_k] x^l y^k
//! ```
//!
//! evaluated by anti-diagonal summation of recurrence-generated terms
//! ([`phi1_eval`]), expanded into exact coefficients ([`phi1_coeffs_exact`]),
//! and the companion evaluators for closed-form q-derivatives and the
//! summation formula in terms of the unilateral series `2Phi1(., 0; .; q, y)`.

mod closed;
mod coeffs;
mod series;

use std::collections::BTreeMap;

use crate::error::{QError, Result};
use crate::qcore::{Base, BasePower, QBases, POCHHAMMER_CAP};
use crate::scalar::Scalar;

pub use closed::{phi1_deriv_closed, phi1_summation_eval};
pub use coeffs::{
    phi1_coefficients, phi1_coeffs_exact, phi1_summation_coeffs, phi2_1_coefficients,
};
pub use series::{phi1_eval, phi1_recurrence_coefficients, phi1_terms, phi2_1_eval};

/// Parameters `q^a` (base q), `q1^b` (base q1), `q^c` (base q) and the bases.
#[derive(Debug, Clone, PartialEq)]
pub struct Phi1Params<T> {
    pub a: BasePower<T>,
    pub b: BasePower<T>,
    pub c: BasePower<T>,
    pub bases: QBases<T>,
}

impl<T: Scalar> Phi1Params<T> {
    pub fn new(bases: QBases<T>, a: BasePower<T>, b: BasePower<T>, c: BasePower<T>) -> Result<Self> {
        for (name, bp, expected) in [("a", &a, Base::Q), ("b", &b, Base::Q1), ("c", &c, Base::Q)] {
            if bp.base != expected {
                return Err(QError::BaseMismatch {
                    name,
                    expected: expected.name(),
                });
            }
        }
        Ok(Self { a, b, c, bases })
    }

    /// Parameters from integer exponents: `q^a`, `q1^b`, `q^c`.
    pub fn from_exponents(bases: QBases<T>, a: i64, b: i64, c: i64) -> Result<Self> {
        let pa = BasePower::integer(Base::Q, &bases, a)?;
        let pb = BasePower::integer(Base::Q1, &bases, b)?;
        let pc = BasePower::integer(Base::Q, &bases, c)?;
        Self::new(bases, pa, pb, pc)
    }

    pub fn q(&self) -> &T {
        self.bases.q()
    }
    pub fn q1(&self) -> &T {
        self.bases.q1()
    }
    pub fn qa(&self) -> &T {
        &self.a.value
    }
    pub fn q1b(&self) -> &T {
        &self.b.value
    }
    pub fn qc(&self) -> &T {
        &self.c.value
    }

    /// Shift the exponents `a += da`, `b += db`, `c += dc`.
    pub fn shifted(&self, da: i64, db: i64, dc: i64) -> Result<Self> {
        Ok(Self {
            a: self.a.shifted(&self.bases, da)?,
            b: self.b.shifted(&self.bases, db)?,
            c: self.c.shifted(&self.bases, dc)?,
            bases: self.bases.clone(),
        })
    }

    /// Fails with [`QError::Pole`] at the first `j < upto` with
    /// `1 - q^c q^j` vanishing.
    pub fn check_poles(&self, upto: usize) -> Result<()> {
        let mut c_qj = self.qc().clone();
        for j in 0..upto {
            if (T::one() - c_qj.clone()).is_negligible() {
                return Err(QError::Pole { index: j });
            }
            c_qj = c_qj * self.q().clone();
        }
        Ok(())
    }

    pub fn require_exponents(&self) -> Result<(i64, i64, i64)> {
        let get = |bp: &BasePower<T>, name| bp.exponent.ok_or(QError::MissingExponent { name });
        Ok((get(&self.a, "a")?, get(&self.b, "b")?, get(&self.c, "c")?))
    }
}

/// Evaluation point `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arguments<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Arguments<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    /// Rejects points outside the open unit polydisc.
    pub fn check_domain(&self) -> Result<()> {
        check_unit_disc("x", &self.x)?;
        check_unit_disc("y", &self.y)
    }
}

pub(crate) fn check_unit_disc<T: Scalar>(name: &'static str, v: &T) -> Result<()> {
    if v.is_finite() && v.magnitude() < 1.0 {
        Ok(())
    } else {
        Err(QError::Domain {
            name,
            value: v.to_string(),
        })
    }
}

/// Truncation and stopping controls shared by all series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub l_max: usize,
    pub k_max: usize,
    /// Relative tail tolerance (absolute when the partial sum is below 1).
    pub tail_tol: f64,
    pub quiet_diagonals: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            l_max: 256,
            k_max: 256,
            tail_tol: 1e-16,
            quiet_diagonals: 3,
        }
    }
}

impl SeriesOptions {
    pub fn validate(&self) -> Result<()> {
        if self.l_max == 0 || self.k_max == 0 {
            return Err(QError::InvalidOptions("caps must be positive".into()));
        }
        if self.l_max > POCHHAMMER_CAP || self.k_max > POCHHAMMER_CAP {
            return Err(QError::InvalidOptions(format!(
                "caps must not exceed {POCHHAMMER_CAP}"
            )));
        }
        if !(self.tail_tol > 0.0) {
            return Err(QError::InvalidOptions("tail_tol must be positive".into()));
        }
        if self.quiet_diagonals == 0 {
            return Err(QError::InvalidOptions(
                "quiet_diagonals must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Stopping threshold for a partial sum of magnitude `partial`.
    pub(crate) fn threshold(&self, partial: f64) -> f64 {
        self.tail_tol * partial.max(1.0)
    }
}

/// A converged truncated-series value.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

/// Coefficients of `x^l y^k` for `l + k <= degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable<T> {
    pub degree: usize,
    pub entries: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> CoeffTable<T> {
    pub fn zeros(degree: usize) -> Self {
        let mut entries = BTreeMap::new();
        for l in 0..=degree {
            for k in 0..=degree - l {
                entries.insert((l, k), T::zero());
            }
        }
        Self { degree, entries }
    }

    pub fn get(&self, l: usize, k: usize) -> Option<&T> {
        self.entries.get(&(l, k))
    }

    /// The truncated polynomial evaluated at `(x, y)`.
    pub fn evaluate(&self, x: &T, y: &T) -> T {
        self.entries.iter().fold(T::zero(), |acc, (&(l, k), c)| {
            acc + c.clone() * pow_usize(x, l) * pow_usize(y, k)
        })
    }
}

pub(crate) fn pow_usize<T: Scalar>(v: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, _| acc * v.clone())
}
