//! Closed-form prefactors built from the seven atoms `q, q1, q^a, q1^b, q^c, x, y`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{QError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Q,
    Q1,
    Qa,
    Q1b,
    Qc,
    X,
    Y,
}

impl Atom {
    pub fn symbol(self) -> &'static str {
        match self {
            Atom::Q => "q",
            Atom::Q1 => "q1",
            Atom::Qa => "q^a",
            Atom::Q1b => "q1^b",
            Atom::Qc => "q^c",
            Atom::X => "x",
            Atom::Y => "y",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoeffExpr {
    Int(i64),
    Atom(Atom),
    Neg(Box<CoeffExpr>),
    Add(Box<CoeffExpr>, Box<CoeffExpr>),
    Sub(Box<CoeffExpr>, Box<CoeffExpr>),
    Mul(Box<CoeffExpr>, Box<CoeffExpr>),
    Div(Box<CoeffExpr>, Box<CoeffExpr>),
}

/// Target algebra for [`CoeffExpr::eval`].
pub trait Evaluator {
    type Value;

    fn constant(&self, n: i64) -> Self::Value;
    fn atom(&self, atom: Atom) -> Self::Value;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    /// `divisor` is the source expression of `b`, for diagnostics.
    fn div(&self, a: Self::Value, b: Self::Value, divisor: &CoeffExpr) -> Result<Self::Value>;
}

impl CoeffExpr {
    pub fn atom(atom: Atom) -> Self {
        CoeffExpr::Atom(atom)
    }

    pub fn eval<E: Evaluator>(&self, env: &E) -> Result<E::Value> {
        Ok(match self {
            CoeffExpr::Int(n) => env.constant(*n),
            CoeffExpr::Atom(a) => env.atom(*a),
            CoeffExpr::Neg(a) => env.neg(a.eval(env)?),
            CoeffExpr::Add(a, b) => env.add(a.eval(env)?, b.eval(env)?),
            CoeffExpr::Sub(a, b) => env.sub(a.eval(env)?, b.eval(env)?),
            CoeffExpr::Mul(a, b) => env.mul(a.eval(env)?, b.eval(env)?),
            CoeffExpr::Div(a, b) => env.div(a.eval(env)?, b.eval(env)?, b)?,
        })
    }

    /// Every divisor appearing in the expression.
    pub fn denominators(&self) -> Vec<&CoeffExpr> {
        let mut out = Vec::new();
        self.collect_denominators(&mut out);
        out
    }

    fn collect_denominators<'a>(&'a self, out: &mut Vec<&'a CoeffExpr>) {
        match self {
            CoeffExpr::Int(_) | CoeffExpr::Atom(_) => {}
            CoeffExpr::Neg(a) => a.collect_denominators(out),
            CoeffExpr::Add(a, b) | CoeffExpr::Sub(a, b) | CoeffExpr::Mul(a, b) => {
                a.collect_denominators(out);
                b.collect_denominators(out);
            }
            CoeffExpr::Div(a, b) => {
                a.collect_denominators(out);
                out.push(b);
                b.collect_denominators(out);
            }
        }
    }
}

pub(crate) fn zero_denominator(divisor: &CoeffExpr) -> QError {
    QError::ZeroDenominator {
        expr: divisor.to_string(),
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffExpr::Int(n) if *n < 0 => write!(f, "({n})"),
            CoeffExpr::Int(n) => write!(f, "{n}"),
            CoeffExpr::Atom(a) => f.write_str(a.symbol()),
            CoeffExpr::Neg(a) => write!(f, "-{a}"),
            CoeffExpr::Add(a, b) => write!(f, "({a} + {b})"),
            CoeffExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            CoeffExpr::Mul(a, b) => write!(f, "{a}*{b}"),
            CoeffExpr::Div(a, b) => match **b {
                CoeffExpr::Mul(..) | CoeffExpr::Div(..) => write!(f, "{a}/({b})"),
                _ => write!(f, "{a}/{b}"),
            },
        }
    }
}

impl From<i64> for CoeffExpr {
    fn from(n: i64) -> Self {
        CoeffExpr::Int(n)
    }
}

impl From<Atom> for CoeffExpr {
    fn from(a: Atom) -> Self {
        CoeffExpr::Atom(a)
    }
}

impl Neg for CoeffExpr {
    type Output = CoeffExpr;
    fn neg(self) -> CoeffExpr {
        CoeffExpr::Neg(Box::new(self))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl<R: Into<CoeffExpr>> $trait<R> for CoeffExpr {
            type Output = CoeffExpr;
            fn $method(self, rhs: R) -> CoeffExpr {
                CoeffExpr::$variant(Box::new(self), Box::new(rhs.into()))
            }
        }

        impl $trait<CoeffExpr> for i64 {
            type Output = CoeffExpr;
            fn $method(self, rhs: CoeffExpr) -> CoeffExpr {
                CoeffExpr::$variant(Box::new(CoeffExpr::Int(self)), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

#[cfg(test)]
mod tests {
    use super::*;

    struct F64Env;

    impl Evaluator for F64Env {
        type Value = f64;
        fn constant(&self, n: i64) -> f64 {
            n as f64
        }
        fn atom(&self, a: Atom) -> f64 {
            match a {
                Atom::Q => 0.5,
                Atom::Q1 => 0.3,
                Atom::Qa => 0.25,
                _ => 2.0,
            }
        }
        fn add(&self, a: f64, b: f64) -> f64 {
            a + b
        }
        fn sub(&self, a: f64, b: f64) -> f64 {
            a - b
        }
        fn mul(&self, a: f64, b: f64) -> f64 {
            a * b
        }
        fn neg(&self, a: f64) -> f64 {
            -a
        }
        fn div(&self, a: f64, b: f64, d: &CoeffExpr) -> Result<f64> {
            if b == 0.0 {
                Err(zero_denominator(d))
            } else {
                Ok(a / b)
            }
        }
    }

    #[test]
    fn builds_and_evaluates() {
        let e = CoeffExpr::atom(Atom::Qa) * (1 - CoeffExpr::atom(Atom::Q)) / (1 - CoeffExpr::atom(Atom::Qa));
        assert!((e.eval(&F64Env).unwrap() - 0.25 * 0.5 / 0.75).abs() < 1e-15);
        assert_eq!(e.to_string(), "q^a*(1 - q)/(1 - q^a)");
        assert_eq!(e.denominators().len(), 1);
    }

    #[test]
    fn zero_denominator_is_reported() {
        let e = CoeffExpr::from(1) / (CoeffExpr::atom(Atom::Q) - CoeffExpr::atom(Atom::Q));
        assert!(matches!(e.eval(&F64Env), Err(QError::ZeroDenominator { .. })));
    }
}
