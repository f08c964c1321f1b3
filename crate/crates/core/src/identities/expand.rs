//! Exact expansion of identity terms as truncated power series in `x`, `y`.

use super::expr::{zero_denominator, Atom, CoeffExpr, Evaluator};
use super::{IdentityTerm, PreMap, Scale, TermKind};
use crate::error::{QError, Result};
use crate::phi1::{phi1_coefficients, phi1_summation_coeffs, pow_usize, Arguments, CoeffTable, Phi1Params};
use crate::qcore::{q_number, Base};
use crate::scalar::{checked_div, Scalar};

/// Atom values at a concrete point.
pub struct ScalarEnv<T> {
    atoms: [T; 7],
}

impl<T: Scalar> ScalarEnv<T> {
    pub fn new(p: &Phi1Params<T>, arg: &Arguments<T>) -> Self {
        Self {
            atoms: [
                p.q().clone(),
                p.q1().clone(),
                p.qa().clone(),
                p.q1b().clone(),
                p.qc().clone(),
                arg.x.clone(),
                arg.y.clone(),
            ],
        }
    }
}

fn atom_index(a: Atom) -> usize {
    match a {
        Atom::Q => 0,
        Atom::Q1 => 1,
        Atom::Qa => 2,
        Atom::Q1b => 3,
        Atom::Qc => 4,
        Atom::X => 5,
        Atom::Y => 6,
    }
}

impl<T: Scalar> Evaluator for ScalarEnv<T> {
    type Value = T;

    fn constant(&self, n: i64) -> T {
        T::from_i64(n)
    }
    fn atom(&self, atom: Atom) -> T {
        self.atoms[atom_index(atom)].clone()
    }
    fn add(&self, a: T, b: T) -> T {
        a + b
    }
    fn sub(&self, a: T, b: T) -> T {
        a - b
    }
    fn mul(&self, a: T, b: T) -> T {
        a * b
    }
    fn neg(&self, a: T) -> T {
        -a
    }
    fn div(&self, a: T, b: T, divisor: &CoeffExpr) -> Result<T> {
        if b.is_negligible() {
            return Err(zero_denominator(divisor));
        }
        checked_div(&a, &b)
    }
}

/// Evaluates prefactors as polynomials in `x`, `y` truncated at `degree`,
/// with the parameter atoms as constants.
pub struct SeriesEnv<'a, T> {
    params: &'a Phi1Params<T>,
    degree: usize,
}

impl<'a, T: Scalar> SeriesEnv<'a, T> {
    pub fn new(params: &'a Phi1Params<T>, degree: usize) -> Self {
        Self { params, degree }
    }

    fn constant_series(&self, v: T) -> CoeffTable<T> {
        let mut s = CoeffTable::zeros(self.degree);
        s.entries.insert((0, 0), v);
        s
    }
}

impl<T: Scalar> Evaluator for SeriesEnv<'_, T> {
    type Value = CoeffTable<T>;

    fn constant(&self, n: i64) -> CoeffTable<T> {
        self.constant_series(T::from_i64(n))
    }
    fn atom(&self, atom: Atom) -> CoeffTable<T> {
        let p = self.params;
        match atom {
            Atom::Q => self.constant_series(p.q().clone()),
            Atom::Q1 => self.constant_series(p.q1().clone()),
            Atom::Qa => self.constant_series(p.qa().clone()),
            Atom::Q1b => self.constant_series(p.q1b().clone()),
            Atom::Qc => self.constant_series(p.qc().clone()),
            Atom::X | Atom::Y => {
                let mut s = CoeffTable::zeros(self.degree);
                if self.degree >= 1 {
                    let key = if atom == Atom::X { (1, 0) } else { (0, 1) };
                    s.entries.insert(key, T::one());
                }
                s
            }
        }
    }
    fn add(&self, a: CoeffTable<T>, b: CoeffTable<T>) -> CoeffTable<T> {
        zip_with(a, &b, |u, v| u + v)
    }
    fn sub(&self, a: CoeffTable<T>, b: CoeffTable<T>) -> CoeffTable<T> {
        zip_with(a, &b, |u, v| u - v)
    }
    fn mul(&self, a: CoeffTable<T>, b: CoeffTable<T>) -> CoeffTable<T> {
        series_mul(&a, &b)
    }
    fn neg(&self, a: CoeffTable<T>) -> CoeffTable<T> {
        map_values(a, |v| -v)
    }
    fn div(&self, a: CoeffTable<T>, b: CoeffTable<T>, divisor: &CoeffExpr) -> Result<CoeffTable<T>> {
        let non_constant = b.entries.iter().any(|(&key, v)| key != (0, 0) && !v.is_zero());
        if non_constant {
            return Err(QError::NonConstantDivisor {
                expr: divisor.to_string(),
            });
        }
        let d = b.get(0, 0).cloned().unwrap_or_else(T::zero);
        if d.is_negligible() {
            return Err(zero_denominator(divisor));
        }
        let inv = checked_div(&T::one(), &d)?;
        Ok(map_values(a, |v| v * inv.clone()))
    }
}

fn zip_with<T: Scalar>(mut a: CoeffTable<T>, b: &CoeffTable<T>, f: impl Fn(T, T) -> T) -> CoeffTable<T> {
    for (key, v) in a.entries.iter_mut() {
        let w = b.entries.get(key).cloned().unwrap_or_else(T::zero);
        *v = f(v.clone(), w);
    }
    a
}

fn map_values<T: Scalar>(mut a: CoeffTable<T>, f: impl Fn(T) -> T) -> CoeffTable<T> {
    for v in a.entries.values_mut() {
        *v = f(v.clone());
    }
    a
}

/// Product truncated at the smaller of the two degrees.
pub(crate) fn series_mul<T: Scalar>(a: &CoeffTable<T>, b: &CoeffTable<T>) -> CoeffTable<T> {
    let degree = a.degree.min(b.degree);
    let mut out: CoeffTable<T> = CoeffTable::zeros(degree);
    for (&(la, ka), va) in &a.entries {
        if va.is_zero() || la + ka > degree {
            continue;
        }
        for (&(lb, kb), vb) in &b.entries {
            if vb.is_zero() || la + ka + lb + kb > degree {
                continue;
            }
            let slot = out.entries.get_mut(&(la + lb, ka + kb)).unwrap();
            *slot = slot.clone() + va.clone() * vb.clone();
        }
    }
    out
}

fn scale_value<T: Scalar>(p: &Phi1Params<T>, s: Scale) -> T {
    match s {
        Scale::One => T::one(),
        Scale::Q => p.q().clone(),
        Scale::Q1 => p.q1().clone(),
    }
}

/// Expands one term through total degree `degree`: coefficients of the
/// shifted series, argument scalings, the substitution `y -> x y`, Jackson
/// derivatives acting monomialwise (`D_b x^l = [l]_b x^{l-1}`), and finally
/// the prefactor polynomial.
pub fn expand_term<T: Scalar>(t: &IdentityTerm, p: &Phi1Params<T>, degree: usize) -> Result<CoeffTable<T>> {
    let coeff = t.coeff.eval(&SeriesEnv::new(p, degree))?;
    if coeff.entries.values().all(|v| v.is_zero()) {
        return Ok(CoeffTable::zeros(degree));
    }

    let work = degree + t.deriv.x_order + t.deriv.y_order;
    let shifted = p.shifted(t.shift.da, t.shift.db, t.shift.dc)?;
    let base = match t.kind {
        TermKind::Phi1 => phi1_coefficients(&shifted, work)?,
        TermKind::SummationFormula => phi1_summation_coeffs(&shifted, work)?,
    };

    let sx = scale_value(p, t.transform.x_scale);
    let sy = scale_value(p, t.transform.y_scale);
    let mut series = CoeffTable::zeros(work);
    for ((l, k), v) in base.entries {
        let v = v * pow_usize(&sx, l) * pow_usize(&sy, k);
        let key = match t.transform.pre_map {
            PreMap::Identity => (l, k),
            PreMap::XTimesY => (l + k, k),
        };
        if key.0 + key.1 <= work {
            series.entries.insert(key, v);
        }
    }

    let x_base = match t.deriv.x_base {
        Base::Q => p.q(),
        Base::Q1 => p.q1(),
    };
    for _ in 0..t.deriv.x_order {
        series = lower(&series, |(l, k)| (l >= 1).then(|| (l - 1, k)), |(l, _)| q_number(l, x_base))?;
    }
    for _ in 0..t.deriv.y_order {
        series = lower(&series, |(l, k)| (k >= 1).then(|| (l, k - 1)), |(_, k)| q_number(k, p.q()))?;
    }
    Ok(series_mul(&coeff, &series))
}

fn lower<T: Scalar>(
    s: &CoeffTable<T>,
    index: impl Fn((usize, usize)) -> Option<(usize, usize)>,
    factor: impl Fn((usize, usize)) -> Result<T>,
) -> Result<CoeffTable<T>> {
    let mut out = CoeffTable::zeros(s.degree.saturating_sub(1));
    for (&key, v) in &s.entries {
        if let Some(target) = index(key) {
            if let Some(slot) = out.entries.get_mut(&target) {
                *slot = v.clone() * factor(key)?;
            }
        }
    }
    Ok(out)
}
