//! Brute-force references that share no code path with the library's
//! series engine.
#![allow(dead_code, unused_imports)]

use qhumbert::phi1::phi1_eval;
use qhumbert::{Arguments, Phi1Params, Scalar, SeriesOptions};

pub use qhumbert::identities::default_float_grid;

/// `prod_{r<n} (1 - a q^r)` by a plain loop.
pub fn poch<T: Scalar>(a: &T, q: &T, n: usize) -> T {
    let mut p = T::one();
    let mut aq = a.clone();
    for _ in 0..n {
        p = p * (T::one() - aq.clone());
        aq = aq * q.clone();
    }
    p
}

pub fn pow<T: Scalar>(v: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, _| acc * v.clone())
}

/// Coefficient of `x^l y^k` straight from the product definition.
pub fn coefficient<T: Scalar>(p: &Phi1Params<T>, l: usize, k: usize) -> T {
    let num = poch(p.qa(), p.q(), l + k) * poch(p.q1b(), p.q1(), l);
    let den = poch(p.qc(), p.q(), l + k) * poch(p.q1(), p.q1(), l) * poch(p.q(), p.q(), k);
    num / den
}

/// Prefix tables of Pochhammer quotients, grouped factor by factor so the
/// rationals stay reduced.
pub struct Products<T> {
    ac: Vec<T>,
    b: Vec<T>,
    q: Vec<T>,
}

impl<T: Scalar> Products<T> {
    pub fn new(p: &Phi1Params<T>, n: usize) -> Self {
        let table = |num: &T, den: &T, base: &T, len: usize| {
            let mut out = vec![T::one()];
            let (mut u, mut v) = (num.clone(), den.clone());
            for _ in 0..len {
                let last = out.last().unwrap().clone();
                out.push(last * (T::one() - u.clone()) / (T::one() - v.clone()));
                u = u * base.clone();
                v = v * base.clone();
            }
            out
        };
        Self {
            ac: table(p.qa(), p.qc(), p.q(), 2 * n),
            b: table(p.q1b(), p.q1(), p.q1(), n),
            q: table(&T::zero(), p.q(), p.q(), n),
        }
    }

    pub fn coefficient(&self, l: usize, k: usize) -> T {
        self.ac[l + k].clone() * self.b[l].clone() * self.q[k].clone()
    }
}

/// Nested double loop over `l, k <= n`.
pub fn phi1_brute<T: Scalar>(p: &Phi1Params<T>, x: &T, y: &T, n: usize) -> T {
    let prods = Products::new(p, n);
    let xs: Vec<T> = (0..=n).map(|i| pow(x, i)).collect();
    let ys: Vec<T> = (0..=n).map(|i| pow(y, i)).collect();
    let mut sum = T::zero();
    for l in 0..=n {
        for k in 0..=n {
            sum = sum + prods.coefficient(l, k) * xs[l].clone() * ys[k].clone();
        }
    }
    sum
}

/// `sum_{n<=terms} (a)_n / [(c)_n (q)_n] z^n` by direct products.
pub fn phi2_1_brute<T: Scalar>(a: &T, c: &T, q: &T, z: &T, terms: usize) -> T {
    (0..=terms).fold(T::zero(), |acc, n| {
        acc + poch(a, q, n) / (poch(c, q, n) * poch(q, q, n)) * pow(z, n)
    })
}

/// `D_{x,q1}^r D_{y,q}^s` of `phi1_eval` by nested two-point quotients.
pub fn jackson_iterated<T: Scalar>(
    p: &Phi1Params<T>,
    x: &T,
    y: &T,
    r: usize,
    s: usize,
    opt: &SeriesOptions,
) -> T {
    if r > 0 {
        let q1 = p.q1().clone();
        let hi = jackson_iterated(p, x, y, r - 1, s, opt);
        let lo = jackson_iterated(p, &(q1.clone() * x.clone()), y, r - 1, s, opt);
        (hi - lo) / ((T::one() - q1) * x.clone())
    } else if s > 0 {
        let q = p.q().clone();
        let hi = jackson_iterated(p, x, y, 0, s - 1, opt);
        let lo = jackson_iterated(p, x, &(q.clone() * y.clone()), 0, s - 1, opt);
        (hi - lo) / ((T::one() - q) * y.clone())
    } else {
        phi1_eval(p, &Arguments::new(x.clone(), y.clone()), opt).unwrap().value
    }
}
