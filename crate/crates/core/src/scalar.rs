//! The numeric field every computation runs in.
//!
//! Float mode is double-precision (real or complex); exact mode is
//! arbitrary-precision rational. The arithmetic mode is fixed by the type
//! parameter, so mixing modes inside one computation does not type-check.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{QError, Result};

/// Threshold below which a float quantity counts as vanishing when testing
/// poles and side conditions.
pub const FLOAT_NEAR_ZERO: f64 = 1e-13;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for rational arithmetic, where equality is exact.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// Modulus as a double (approximate for rationals).
    fn magnitude(&self) -> f64;

    fn is_finite(&self) -> bool;

    /// Exact zero for rationals, modulus at most [`FLOAT_NEAR_ZERO`] otherwise.
    fn is_negligible(&self) -> bool;

    /// Admissible as a base: `0 < |q| < 1` in float mode, `0 < q < 1` for rationals.
    fn is_valid_base(&self) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_NEAR_ZERO
    }
    fn is_valid_base(&self) -> bool {
        let m = self.abs();
        m > 0.0 && m < 1.0
    }
}

impl Scalar for Complex<f64> {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn is_negligible(&self) -> bool {
        self.norm() <= FLOAT_NEAR_ZERO
    }
    fn is_valid_base(&self) -> bool {
        let m = self.norm();
        m > 0.0 && m < 1.0
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn is_valid_base(&self) -> bool {
        self.is_positive() && *self < BigRational::one()
    }
}

/// Division that refuses exact zero divisors and non-finite quotients.
pub fn checked_div<T: Scalar>(num: &T, den: &T) -> Result<T> {
    if den.is_zero() {
        return Err(QError::DivisionByZero);
    }
    finite(num.clone() / den.clone(), "division")
}

pub(crate) fn finite<T: Scalar>(v: T, context: &'static str) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QError::NonFinite { context })
    }
}

/// Integer power; negative exponents go through [`checked_div`].
pub fn powi<T: Scalar>(base: &T, exp: i64) -> Result<T> {
    let mut acc = T::one();
    let mut sq = base.clone();
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq.clone();
        }
        e >>= 1;
        if e > 0 {
            sq = sq.clone() * sq;
        }
    }
    if exp < 0 {
        checked_div(&T::one(), &acc)
    } else {
        finite(acc, "power")
    }
}

/// Relative distance `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_error<T: Scalar>(a: &T, b: &T) -> f64 {
    let scale = a.magnitude().max(b.magnitude());
    let diff = (a.clone() - b.clone()).magnitude();
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
