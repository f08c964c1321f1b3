use std::cell::Cell;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::expand::{expand_term, ScalarEnv};
use super::{Constraint, FloatPoint, IdentitySpec, IdentityTerm, PreMap, Scale, TermKind};
use crate::error::{ErrorClass, QError, Result};
use crate::phi1::{phi1_eval, phi1_summation_eval, Arguments, CoeffTable, Phi1Params, SeriesOptions};
use crate::qcore::{jackson_derivative, Base, BasePower};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedConstraint,
}

/// Parameter and argument values of one verification, as display strings.
/// Exponents are shown as integers when known, otherwise as `=value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub q: String,
    pub q1: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub x: Option<String>,
    pub y: Option<String>,
    pub degree: Option<usize>,
}

impl PointRecord {
    fn new<T: Scalar>(p: &Phi1Params<T>, arg: Option<&Arguments<T>>, degree: Option<usize>) -> Self {
        fn show<T: Scalar>(bp: &BasePower<T>) -> String {
            match bp.exponent {
                Some(e) => e.to_string(),
                None => format!("={}", bp.value),
            }
        }
        Self {
            q: p.q().to_string(),
            q1: p.q1().to_string(),
            a: show(&p.a),
            b: show(&p.b),
            c: show(&p.c),
            x: arg.map(|a| a.x.to_string()),
            y: arg.map(|a| a.y.to_string()),
            degree,
        }
    }
}

/// First differing coefficient `(l, k)` with both sides' values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub l: usize,
    pub k: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    pub mode: Mode,
    pub point: PointRecord,
    pub residual: Option<f64>,
    pub first_mismatch: Option<Mismatch>,
    pub status: Status,
    pub terms_used: usize,
    /// Why the point was skipped or why evaluation failed.
    pub diagnostic: Option<String>,
    pub error_class: Option<ErrorClass>,
}

impl VerifyReport {
    fn base(spec: &IdentitySpec, mode: Mode, point: PointRecord) -> Self {
        Self {
            id: spec.id.clone(),
            mode,
            point,
            residual: None,
            first_mismatch: None,
            status: Status::Fail,
            terms_used: 0,
            diagnostic: None,
            error_class: None,
        }
    }

    fn errored(mut self, e: &QError) -> Self {
        self.status = Status::Fail;
        self.diagnostic = Some(e.to_string());
        self.error_class = Some(e.class());
        self
    }

    fn skipped(mut self, c: &Constraint) -> Self {
        self.status = Status::SkippedConstraint;
        self.diagnostic = Some(format!("side condition violated: {}", c.label()));
        self
    }
}

/// `Err(c)` for the first side condition violated at `p`. Pole-freeness is
/// checked over the first `pole_depth` Pochhammer factors.
fn violated_constraint<T: Scalar>(
    spec: &IdentitySpec,
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    pole_depth: usize,
) -> Result<Option<Constraint>> {
    let env = ScalarEnv::new(p, arg);
    for c in spec.all_constraints() {
        let violated = match &c {
            Constraint::NotOne { expr, .. } => (expr.eval(&env)? - T::one()).is_negligible(),
            Constraint::PoleFree { dc } => p.shifted(0, 0, *dc)?.check_poles(pole_depth).is_err(),
        };
        if violated {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn scale_value<T: Scalar>(p: &Phi1Params<T>, s: Scale) -> T {
    match s {
        Scale::One => T::one(),
        Scale::Q => p.q().clone(),
        Scale::Q1 => p.q1().clone(),
    }
}

/// Value of a term at `(p, arg)`, with the Jackson derivatives expanded into
/// two-point difference quotients.
pub fn eval_term<T: Scalar>(
    t: &IdentityTerm,
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    opt: &SeriesOptions,
) -> Result<T> {
    eval_term_counted(t, p, arg, opt).map(|(v, _)| v)
}

/// [`eval_term`] together with the number of series terms summed.
pub fn eval_term_counted<T: Scalar>(
    t: &IdentityTerm,
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    opt: &SeriesOptions,
) -> Result<(T, usize)> {
    let coeff = t.coeff.eval(&ScalarEnv::new(p, arg))?;
    if coeff.is_zero() {
        return Ok((T::zero(), 0));
    }
    let shifted = p.shifted(t.shift.da, t.shift.db, t.shift.dc)?;
    let sx = scale_value(p, t.transform.x_scale);
    let sy = scale_value(p, t.transform.y_scale);
    let used = Cell::new(0usize);

    let series = |x: &T, y: &T| -> Result<T> {
        let inner_y = match t.transform.pre_map {
            PreMap::Identity => y.clone(),
            PreMap::XTimesY => x.clone() * y.clone(),
        };
        let point = Arguments::new(sx.clone() * x.clone(), sy.clone() * inner_y);
        let r = match t.kind {
            TermKind::Phi1 => phi1_eval(&shifted, &point, opt)?,
            TermKind::SummationFormula => phi1_summation_eval(&shifted, &point, opt)?,
        };
        used.set(used.get() + r.terms_used);
        Ok(r.value)
    };

    let x_base = match t.deriv.x_base {
        Base::Q => p.q(),
        Base::Q1 => p.q1(),
    };
    let value = differentiate(&series, &arg.x, &arg.y, t.deriv.x_order, x_base, t.deriv.y_order, p.q())?;
    Ok((coeff * value, used.get()))
}

/// `D_{x,bx}^rx D_{y,by}^ry f` at `(x, y)` by nested difference quotients.
fn differentiate<T, F>(f: &F, x: &T, y: &T, rx: usize, bx: &T, ry: usize, by: &T) -> Result<T>
where
    T: Scalar,
    F: Fn(&T, &T) -> Result<T>,
{
    if rx > 0 {
        jackson_derivative(|xv| differentiate(f, xv, y, rx - 1, bx, ry, by), x, bx)
    } else if ry > 0 {
        jackson_derivative(|yv| differentiate(f, x, yv, 0, bx, ry - 1, by), y, by)
    } else {
        f(x, y)
    }
}

fn side_sum<T: Scalar>(
    terms: &[IdentityTerm],
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    opt: &SeriesOptions,
    used: &mut usize,
) -> Result<T> {
    let mut sum = T::zero();
    for t in terms {
        let (v, n) = eval_term_counted(t, p, arg, opt)?;
        *used += n;
        sum = sum + v;
    }
    Ok(sum)
}

/// Numerical check with residual `|L - R| / (1 + max(|L|, |R|))`.
pub fn verify_float<T: Scalar>(
    spec: &IdentitySpec,
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    opt: &SeriesOptions,
    tol: f64,
) -> VerifyReport {
    let report = VerifyReport::base(spec, Mode::Float, PointRecord::new(p, Some(arg), None));
    match violated_constraint(spec, p, arg, opt.l_max + opt.k_max) {
        Ok(Some(c)) => return report.skipped(&c),
        Ok(None) => {}
        Err(e) => return report.errored(&e),
    }

    let mut used = 0;
    let sides = side_sum(&spec.lhs, p, arg, opt, &mut used)
        .and_then(|l| side_sum(&spec.rhs, p, arg, opt, &mut used).map(|r| (l, r)));
    match sides {
        Err(e) => VerifyReport {
            terms_used: used,
            ..report.errored(&e)
        },
        Ok((lhs, rhs)) => {
            let residual = (lhs.clone() - rhs.clone()).magnitude()
                / (1.0 + lhs.magnitude().max(rhs.magnitude()));
            VerifyReport {
                residual: Some(residual),
                status: if residual <= tol { Status::Pass } else { Status::Fail },
                terms_used: used,
                ..report
            }
        }
    }
}

fn expand_side<T: Scalar>(
    terms: &[IdentityTerm],
    p: &Phi1Params<T>,
    degree: usize,
) -> Result<CoeffTable<T>> {
    let mut total: CoeffTable<T> = CoeffTable::zeros(degree);
    for t in terms {
        let s = expand_term(t, p, degree)?;
        for (key, v) in s.entries {
            let slot = total.entries.get_mut(&key).expect("same degree");
            *slot = slot.clone() + v;
        }
    }
    Ok(total)
}

/// Coefficient-by-coefficient comparison of both sides through total degree
/// `degree`. Requires integer exponents.
pub fn verify_exact<T: Scalar>(spec: &IdentitySpec, p: &Phi1Params<T>, degree: usize) -> VerifyReport {
    let report = VerifyReport::base(spec, Mode::Exact, PointRecord::new(p, None, Some(degree)));
    if let Err(e) = p.require_exponents() {
        return report.errored(&e);
    }
    let origin = Arguments::new(T::zero(), T::zero());
    let depth = degree + 2 * spec.terms().map(|t| t.deriv.x_order + t.deriv.y_order).max().unwrap_or(0) + 1;
    match violated_constraint(spec, p, &origin, depth) {
        Ok(Some(c)) => return report.skipped(&c),
        Ok(None) => {}
        Err(e) => return report.errored(&e),
    }

    let sides = expand_side(&spec.lhs, p, degree).and_then(|l| expand_side(&spec.rhs, p, degree).map(|r| (l, r)));
    let (lhs, rhs) = match sides {
        Ok(s) => s,
        Err(e) => return report.errored(&e),
    };
    let compared = lhs.entries.len();
    let mismatch = first_mismatch(&lhs.entries, &rhs.entries);
    VerifyReport {
        status: if mismatch.is_none() { Status::Pass } else { Status::Fail },
        first_mismatch: mismatch,
        terms_used: compared,
        ..report
    }
}

fn first_mismatch<T: Scalar>(
    lhs: &BTreeMap<(usize, usize), T>,
    rhs: &BTreeMap<(usize, usize), T>,
) -> Option<Mismatch> {
    // BTreeMap order is lexicographic in (l, k).
    for (&(l, k), a) in lhs {
        let b = rhs.get(&(l, k)).cloned().unwrap_or_else(T::zero);
        if *a != b {
            return Some(Mismatch {
                l,
                k,
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
        }
    }
    None
}

/// Every spec at every grid point, ordered by (spec, grid index).
pub fn verify_all_float<T: Scalar>(
    specs: &[IdentitySpec],
    grid: &[FloatPoint<T>],
    opt: &SeriesOptions,
    tol: f64,
) -> Vec<VerifyReport> {
    let jobs: Vec<(&IdentitySpec, &FloatPoint<T>)> =
        specs.iter().flat_map(|s| grid.iter().map(move |g| (s, g))).collect();
    jobs.par_iter()
        .map(|(s, g)| verify_float(s, &g.params, &g.args, opt, tol))
        .collect()
}

/// Exact counterpart of [`verify_all_float`].
pub fn verify_all_exact<T: Scalar>(
    specs: &[IdentitySpec],
    grid: &[Phi1Params<T>],
    degree: usize,
) -> Vec<VerifyReport> {
    let jobs: Vec<(&IdentitySpec, &Phi1Params<T>)> =
        specs.iter().flat_map(|s| grid.iter().map(move |g| (s, g))).collect();
    jobs.par_iter().map(|(s, p)| verify_exact(s, p, degree)).collect()
}
