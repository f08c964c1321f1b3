use super::{check_unit_disc, Arguments, CoeffTable, EvalResult, Phi1Params, SeriesOptions};
use crate::error::{QError, Result};
use crate::scalar::{checked_div, finite, Scalar};

/// Largest ratio used for geometric tail extrapolation.
const MAX_TAIL_RATIO: f64 = 1.0 - 1e-3;

/// One anti-diagonal `l + k = index` of terms `T(l, k) x^l y^k`, ascending in `l`.
pub(crate) struct Diagonal<T> {
    pub index: usize,
    pub terms: Vec<(usize, T)>,
}

/// Generates the terms of the double series diagonal by diagonal via the
/// two term ratios
///
/// ```text
/// T(l+1,k)/T(l,k) = (1 - q^a q^{l+k})(1 - q1^b q1^l) x / [(1 - q^c q^{l+k})(1 - q1^{l+1})]
/// T(l,k+1)/T(l,k) = (1 - q^a q^{l+k}) y / [(1 - q^c q^{l+k})(1 - q^{k+1})]
/// ```
///
/// The x-ratio is only applied along the `k = 0` edge.
pub(crate) struct Diagonals<'a, T> {
    params: &'a Phi1Params<T>,
    x: T,
    y: T,
    l_max: usize,
    k_max: usize,
    current: Option<Diagonal<T>>,
    q_pows: Vec<T>,
    q1_pows: Vec<T>,
    done: bool,
}

impl<'a, T: Scalar> Diagonals<'a, T> {
    pub fn new(params: &'a Phi1Params<T>, x: T, y: T, l_max: usize, k_max: usize) -> Self {
        Self {
            params,
            x,
            y,
            l_max,
            k_max,
            current: None,
            q_pows: vec![T::one()],
            q1_pows: vec![T::one()],
            done: false,
        }
    }

    fn q_pow(&mut self, j: usize) -> T {
        while self.q_pows.len() <= j {
            let next = self.q_pows.last().unwrap().clone() * self.params.q().clone();
            self.q_pows.push(next);
        }
        self.q_pows[j].clone()
    }

    fn q1_pow(&mut self, j: usize) -> T {
        while self.q1_pows.len() <= j {
            let next = self.q1_pows.last().unwrap().clone() * self.params.q1().clone();
            self.q1_pows.push(next);
        }
        self.q1_pows[j].clone()
    }

    fn advance(&mut self, prev: &Diagonal<T>) -> Result<Diagonal<T>> {
        let n = prev.index;
        let qn = self.q_pow(n);
        let den = T::one() - self.params.qc().clone() * qn.clone();
        if den.is_negligible() {
            return Err(QError::Pole { index: n });
        }
        let common = checked_div(&(T::one() - self.params.qa().clone() * qn), &den)?;
        let mut terms = Vec::with_capacity(prev.terms.len() + 1);
        for (l, t) in &prev.terms {
            let k = n - l;
            if k + 1 <= self.k_max {
                let step = common.clone() * self.y.clone();
                let qk1 = self.q_pow(k + 1);
                let v = checked_div(&(t.clone() * step), &(T::one() - qk1))?;
                terms.push((*l, finite(v, "series term")?));
            }
        }
        if let Some((l, t)) = prev.terms.last() {
            if *l == n && n + 1 <= self.l_max {
                let q1n = self.q1_pow(n);
                let q1n1 = self.q1_pow(n + 1);
                let num = t.clone()
                    * common
                    * (T::one() - self.params.q1b().clone() * q1n)
                    * self.x.clone();
                let v = checked_div(&num, &(T::one() - q1n1))?;
                terms.push((n + 1, finite(v, "series term")?));
            }
        }
        Ok(Diagonal {
            index: n + 1,
            terms,
        })
    }
}

impl<T: Scalar> Iterator for Diagonals<'_, T> {
    type Item = Result<Diagonal<T>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let next = match self.current.take() {
            None => Ok(Diagonal {
                index: 0,
                terms: vec![(0, T::one())],
            }),
            Some(prev) => self.advance(&prev),
        };
        match next {
            Ok(d) if d.terms.is_empty() => {
                self.done = true;
                None
            }
            Ok(d) => {
                let out = Diagonal {
                    index: d.index,
                    terms: d.terms.clone(),
                };
                self.current = Some(d);
                Some(Ok(out))
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Evaluates the double series at `(x, y)` inside the unit polydisc.
///
/// Diagonals are summed until `quiet_diagonals` consecutive diagonals each
/// have total term magnitude below `tail_tol * max(|partial sum|, 1)` and the
/// geometric tail estimate `|last| rho / (1 - rho)`, `rho = max(|x|, |y|)`,
/// is below the same threshold.
pub fn phi1_eval<T: Scalar>(
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    opt: &SeriesOptions,
) -> Result<EvalResult<T>> {
    opt.validate()?;
    arg.check_domain()?;
    let rho = arg.x.magnitude().max(arg.y.magnitude()).min(MAX_TAIL_RATIO);

    let mut sum = T::zero();
    let mut terms_used = 0;
    let mut quiet = 0;
    let mut last_magnitude = 0.0;
    // Past min(l_max, k_max) the diagonals are incomplete and prove nothing.
    let last_full = opt.l_max.min(opt.k_max);
    for diag in Diagonals::new(p, arg.x.clone(), arg.y.clone(), opt.l_max, opt.k_max) {
        let diag = diag?;
        if diag.index > last_full {
            break;
        }
        let mut magnitude = 0.0;
        for (_, t) in &diag.terms {
            magnitude += t.magnitude();
            sum = sum + t.clone();
        }
        sum = finite(sum, "partial sum")?;
        terms_used += diag.terms.len();
        last_magnitude = magnitude;

        let threshold = opt.threshold(sum.magnitude());
        if magnitude <= threshold {
            quiet += 1;
        } else {
            quiet = 0;
        }
        let tail_estimate = magnitude * rho / (1.0 - rho);
        if quiet >= opt.quiet_diagonals && tail_estimate <= threshold {
            return Ok(EvalResult {
                value: sum,
                terms_used,
                tail_estimate,
                converged: true,
            });
        }
    }
    Err(QError::NoConvergence {
        terms: terms_used,
        last_magnitude,
    })
}

/// The recurrence-generated terms `T(l, k) x^l y^k` for `l + k <= degree`.
/// No domain restriction applies since nothing is summed.
pub fn phi1_terms<T: Scalar>(
    p: &Phi1Params<T>,
    arg: &Arguments<T>,
    degree: usize,
) -> Result<CoeffTable<T>> {
    let mut table = CoeffTable::zeros(degree);
    for diag in Diagonals::new(p, arg.x.clone(), arg.y.clone(), degree, degree) {
        let diag = diag?;
        if diag.index > degree {
            break;
        }
        for (l, t) in diag.terms {
            table.entries.insert((l, diag.index - l), t);
        }
    }
    Ok(table)
}

/// Series coefficients produced by the term-ratio recurrences.
pub fn phi1_recurrence_coefficients<T: Scalar>(
    p: &Phi1Params<T>,
    degree: usize,
) -> Result<CoeffTable<T>> {
    phi1_terms(p, &Arguments::new(T::one(), T::one()), degree)
}

/// The unilateral series `2Phi1(a, 0; c; q, z) = sum_n (a; q)_n / [(c; q)_n (q; q)_n] z^n`.
pub fn phi2_1_eval<T: Scalar>(
    a_val: &T,
    c_val: &T,
    q: &T,
    z: &T,
    opt: &SeriesOptions,
) -> Result<EvalResult<T>> {
    opt.validate()?;
    if !q.is_valid_base() {
        return Err(QError::InvalidBase {
            name: "q",
            value: q.to_string(),
        });
    }
    check_unit_disc("z", z)?;
    let rho = z.magnitude().min(MAX_TAIL_RATIO);

    let mut term = T::one();
    let mut sum = T::one();
    let mut a_qn = a_val.clone();
    let mut c_qn = c_val.clone();
    let mut qn1 = q.clone();
    let mut quiet = 0;
    let mut last_magnitude = 1.0;
    for n in 0..opt.k_max {
        let den = T::one() - c_qn.clone();
        if den.is_negligible() {
            return Err(QError::Pole { index: n });
        }
        let num = term * (T::one() - a_qn.clone()) * z.clone();
        term = finite(checked_div(&num, &(den * (T::one() - qn1.clone())))?, "series term")?;
        sum = finite(sum + term.clone(), "partial sum")?;

        let magnitude = term.magnitude();
        last_magnitude = magnitude;
        let threshold = opt.threshold(sum.magnitude());
        if magnitude <= threshold {
            quiet += 1;
        } else {
            quiet = 0;
        }
        let tail_estimate = magnitude * rho / (1.0 - rho);
        if quiet >= opt.quiet_diagonals && tail_estimate <= threshold {
            return Ok(EvalResult {
                value: sum,
                terms_used: n + 2,
                tail_estimate,
                converged: true,
            });
        }
        a_qn = a_qn * q.clone();
        c_qn = c_qn * q.clone();
        qn1 = qn1 * q.clone();
    }
    Err(QError::NoConvergence {
        terms: opt.k_max + 1,
        last_magnitude,
    })
}
