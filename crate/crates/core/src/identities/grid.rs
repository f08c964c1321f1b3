//! The built-in verification grids.

use num_bigint::BigInt;

use crate::phi1::{Arguments, Phi1Params};
use crate::qcore::QBases;
use crate::{Rational, C64};

pub const DEFAULT_FLOAT_BASES: [f64; 3] = [0.3, 0.5, 0.7];
/// `(q numerators/denominators, q1 numerators/denominators)` of the exact grid.
pub const DEFAULT_EXACT_BASES: ([(i64, i64); 3], [(i64, i64); 2]) =
    ([(1, 2), (1, 3), (2, 5)], [(1, 3), (1, 4)]);
/// Integer exponents `(a, b, c)`.
pub const DEFAULT_EXPONENTS: [(i64, i64, i64); 3] = [(1, 1, 2), (2, 1, 3), (1, 2, 2)];
pub const DEFAULT_FLOAT_ARGUMENTS: [(f64, f64); 3] = [(0.2, 0.1), (-0.3, 0.25), (0.35, -0.2)];

/// A parameter set together with an evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPoint<T> {
    pub params: Phi1Params<T>,
    pub args: Arguments<T>,
}

fn c64(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Every `(q, q1)` pair from the float bases, every exponent triple and
/// every argument pair: 81 points, ordered bases-major.
pub fn default_float_grid() -> Vec<FloatPoint<C64>> {
    let mut out = Vec::new();
    for &q in &DEFAULT_FLOAT_BASES {
        for &q1 in &DEFAULT_FLOAT_BASES {
            let bases = QBases::new(c64(q), c64(q1)).expect("grid bases are valid");
            for &(a, b, c) in &DEFAULT_EXPONENTS {
                let params = Phi1Params::from_exponents(bases.clone(), a, b, c).expect("grid exponents");
                for &(x, y) in &DEFAULT_FLOAT_ARGUMENTS {
                    out.push(FloatPoint {
                        params: params.clone(),
                        args: Arguments::new(c64(x), c64(y)),
                    });
                }
            }
        }
    }
    out
}

/// The 18 exact parameter sets.
pub fn default_exact_grid() -> Vec<Phi1Params<Rational>> {
    let (qs, q1s) = DEFAULT_EXACT_BASES;
    let mut out = Vec::new();
    for &(qn, qd) in &qs {
        for &(q1n, q1d) in &q1s {
            let bases = QBases::new(rat(qn, qd), rat(q1n, q1d)).expect("grid bases are valid");
            for &(a, b, c) in &DEFAULT_EXPONENTS {
                out.push(Phi1Params::from_exponents(bases.clone(), a, b, c).expect("grid exponents"));
            }
        }
    }
    out
}

/// The float argument pairs as exact rationals.
pub fn default_exact_arguments() -> Vec<Arguments<Rational>> {
    vec![
        Arguments::new(rat(1, 5), rat(1, 10)),
        Arguments::new(rat(-3, 10), rat(1, 4)),
        Arguments::new(rat(7, 20), rat(-1, 5)),
    ]
}
