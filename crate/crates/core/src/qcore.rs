//! q-calculus primitives: bases, base powers, q-shifted factorials,
//! q-integers, the Jackson difference quotient and the anti-diagonal
//! rearrangement of a double sum.

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::scalar::{checked_div, finite, powi, Scalar};

/// Largest `k` accepted by [`q_pochhammer`].
pub const POCHHAMMER_CAP: usize = 512;

/// Which of the two independent bases a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Q,
    Q1,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Q => "q",
            Base::Q1 => "q1",
        }
    }
}

/// The pair of bases `(q, q1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QBases<T> {
    q: T,
    q1: T,
}

impl<T: Scalar> QBases<T> {
    pub fn new(q: T, q1: T) -> Result<Self> {
        for (name, v) in [("q", &q), ("q1", &q1)] {
            if !v.is_valid_base() {
                return Err(QError::InvalidBase {
                    name,
                    value: v.to_string(),
                });
            }
        }
        Ok(Self { q, q1 })
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn q1(&self) -> &T {
        &self.q1
    }

    pub fn get(&self, base: Base) -> &T {
        match base {
            Base::Q => &self.q,
            Base::Q1 => &self.q1,
        }
    }
}

/// A quantity such as `q^a` or `q1^b`, carried by value, with the integer
/// exponent kept alongside when it is known.
#[derive(Debug, Clone, PartialEq)]
pub struct BasePower<T> {
    pub base: Base,
    pub value: T,
    pub exponent: Option<i64>,
}

impl<T: Scalar> BasePower<T> {
    /// `base^exponent` for an integer exponent.
    pub fn integer(base: Base, bases: &QBases<T>, exponent: i64) -> Result<Self> {
        Ok(Self {
            base,
            value: powi(bases.get(base), exponent)?,
            exponent: Some(exponent),
        })
    }

    /// A power given only by its value (float mode, non-integer exponents).
    pub fn from_value(base: Base, value: T) -> Self {
        Self {
            base,
            value,
            exponent: None,
        }
    }

    /// The power with exponent increased by `by`; the value is multiplied by
    /// `base^by`.
    pub fn shifted(&self, bases: &QBases<T>, by: i64) -> Result<Self> {
        if by == 0 {
            return Ok(self.clone());
        }
        let factor = powi(bases.get(self.base), by)?;
        Ok(Self {
            base: self.base,
            value: finite(self.value.clone() * factor, "parameter shift")?,
            exponent: self.exponent.map(|e| e + by),
        })
    }
}

/// `(a; q)_k = prod_{r<k} (1 - a q^r)`, with `(a; q)_0 = 1`.
pub fn q_pochhammer<T: Scalar>(a: &T, q: &T, k: usize) -> Result<T> {
    if k > POCHHAMMER_CAP {
        return Err(QError::PochhammerCap {
            k,
            cap: POCHHAMMER_CAP,
        });
    }
    let mut prod = T::one();
    let mut a_qr = a.clone();
    for _ in 0..k {
        prod = prod * (T::one() - a_qr.clone());
        a_qr = a_qr * q.clone();
    }
    finite(prod, "q-Pochhammer product")
}

/// The q-integer `[n]_q = (1 - q^n) / (1 - q)`.
pub fn q_number<T: Scalar>(n: usize, q: &T) -> Result<T> {
    let den = T::one() - q.clone();
    if den.is_zero() {
        return Err(QError::UnitBase);
    }
    let qn = powi(q, n as i64)?;
    checked_div(&(T::one() - qn), &den)
}

/// Jackson q-derivative `(f(x) - f(qx)) / ((1 - q) x)`.
pub fn jackson_derivative<T, F>(f: F, x: &T, q: &T) -> Result<T>
where
    T: Scalar,
    F: Fn(&T) -> Result<T>,
{
    if x.is_zero() {
        return Err(QError::JacksonAtZero);
    }
    let one_minus_q = T::one() - q.clone();
    if one_minus_q.is_zero() {
        return Err(QError::UnitBase);
    }
    let qx = q.clone() * x.clone();
    let num = f(x)? - f(&qx)?;
    checked_div(&num, &(one_minus_q * x.clone()))
}

/// Sums a finite-support array `A(k, n)` (stored as `array[k][n]`, ragged rows
/// allowed, missing entries zero) two ways: rectangularly, and along
/// anti-diagonals `sum_N sum_{k<=N} A(k, N-k)`.
pub fn rearrange_check<T: Scalar>(array: &[Vec<T>]) -> (T, T) {
    let mut rectangular = T::zero();
    let width = array.iter().map(Vec::len).max().unwrap_or(0);
    for n in 0..width {
        for row in array {
            if let Some(v) = row.get(n) {
                rectangular = rectangular + v.clone();
            }
        }
    }

    let mut diagonal = T::zero();
    let rows = array.len();
    if rows > 0 && width > 0 {
        for total in 0..(rows + width - 1) {
            for k in 0..=total.min(rows - 1) {
                if let Some(v) = array[k].get(total - k) {
                    diagonal = diagonal + v.clone();
                }
            }
        }
    }
    (rectangular, diagonal)
}
