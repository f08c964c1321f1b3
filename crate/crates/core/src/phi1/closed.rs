use super::{phi1_eval, phi2_1_eval, Arguments, EvalResult, Phi1Params, SeriesOptions};
use crate::error::{QError, Result};
use crate::qcore::q_pochhammer;
use crate::scalar::{checked_div, finite, powi, Scalar};

/// `D_{x,q1}^r D_{y,q}^s Phi1` via the closed form
///
/// ```text
/// (q^a; q)_{r+s} (q1^b; q1)_r / [(1-q1)^r (1-q)^s (q^c; q)_{r+s}]
///     * Phi1(q^{a+r+s}, q1^{b+r}; q^{c+r+s}; q, q1, x, y)
/// ```
pub fn phi1_deriv_closed<T: Scalar>(
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    r: usize,
    s: usize,
    opt: &SeriesOptions,
) -> Result<EvalResult<T>> {
    let n = r + s;
    p.check_poles(n)?;
    let num = q_pochhammer(p.qa(), p.q(), n)? * q_pochhammer(p.q1b(), p.q1(), r)?;
    let den = powi(&(T::one() - p.q1().clone()), r as i64)?
        * powi(&(T::one() - p.q().clone()), s as i64)?
        * q_pochhammer(p.qc(), p.q(), n)?;
    let prefactor = checked_div(&num, &den)?;

    let shifted = p.shifted(n as i64, r as i64, n as i64)?;
    let inner = phi1_eval(&shifted, arg, opt)?;
    Ok(EvalResult {
        value: finite(prefactor.clone() * inner.value, "derivative prefactor")?,
        terms_used: inner.terms_used,
        tail_estimate: prefactor.magnitude() * inner.tail_estimate,
        converged: inner.converged,
    })
}

/// Evaluates `Phi1` through its expansion in the unilateral series,
///
/// ```text
/// sum_{l>=0} (q^a)_l (q1^b)_l / [(q^c)_l (q1)_l] x^l 2Phi1(q^{a+l}, 0; q^{c+l}; q, y)
/// ```
///
/// with the outer sum stopped by the same quiet-tail rule as [`phi1_eval`].
pub fn phi1_summation_eval<T: Scalar>(
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    opt: &SeriesOptions,
) -> Result<EvalResult<T>> {
    opt.validate()?;
    arg.check_domain()?;
    let (q, q1) = (p.q(), p.q1());
    let rho = arg.x.magnitude().min(1.0 - 1e-3);

    let mut outer = T::one();
    let mut qa_l = p.qa().clone();
    let mut qc_l = p.qc().clone();
    let mut q1b_l = p.q1b().clone();
    let mut q1_l1 = q1.clone();

    let mut sum = T::zero();
    let mut terms_used = 0;
    let mut inner_tails = 0.0;
    let mut quiet = 0;
    let mut last_magnitude = 0.0;
    for l in 0..=opt.l_max {
        let mut magnitude = 0.0;
        if !outer.is_zero() {
            let inner = phi2_1_eval(&qa_l, &qc_l, q, &arg.y, opt)?;
            let term = finite(outer.clone() * inner.value, "summation term")?;
            magnitude = term.magnitude();
            inner_tails += outer.magnitude() * inner.tail_estimate;
            terms_used += inner.terms_used;
            sum = finite(sum + term, "partial sum")?;
        }
        last_magnitude = magnitude;
        let threshold = opt.threshold(sum.magnitude());
        if magnitude <= threshold {
            quiet += 1;
        } else {
            quiet = 0;
        }
        let outer_tail = magnitude * rho / (1.0 - rho);
        if quiet >= opt.quiet_diagonals && outer_tail <= threshold {
            return Ok(EvalResult {
                value: sum,
                terms_used,
                tail_estimate: outer_tail + inner_tails,
                converged: true,
            });
        }

        let den = T::one() - qc_l.clone();
        if den.is_negligible() {
            return Err(QError::Pole { index: l });
        }
        let num = outer * (T::one() - qa_l.clone()) * (T::one() - q1b_l.clone()) * arg.x.clone();
        outer = finite(checked_div(&num, &(den * (T::one() - q1_l1.clone())))?, "summation term")?;
        qa_l = qa_l * q.clone();
        qc_l = qc_l * q.clone();
        q1b_l = q1b_l * q1.clone();
        q1_l1 = q1_l1 * q1.clone();
    }
    Err(QError::NoConvergence {
        terms: terms_used,
        last_magnitude,
    })
}
