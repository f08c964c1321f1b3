use num_rational::BigRational;

use super::{CoeffTable, Phi1Params};
use crate::error::Result;
use crate::qcore::q_pochhammer;
use crate::scalar::{checked_div, Scalar};

fn pochhammer_table<T: Scalar>(a: &T, q: &T, len: usize) -> Result<Vec<T>> {
    (0..=len).map(|n| q_pochhammer(a, q, n)).collect()
}

/// Coefficients of `x^l y^k`, each computed from q-Pochhammer products.
pub fn phi1_coefficients<T: Scalar>(p: &Phi1Params<T>, degree: usize) -> Result<CoeffTable<T>> {
    p.check_poles(degree)?;
    let (q, q1) = (p.q(), p.q1());
    let num_a = pochhammer_table(p.qa(), q, degree)?;
    let den_c = pochhammer_table(p.qc(), q, degree)?;
    let num_b = pochhammer_table(p.q1b(), q1, degree)?;
    let den_q1 = pochhammer_table(q1, q1, degree)?;
    let den_q = pochhammer_table(q, q, degree)?;

    let mut table = CoeffTable::zeros(degree);
    for l in 0..=degree {
        for k in 0..=degree - l {
            let num = num_a[l + k].clone() * num_b[l].clone();
            let den = den_c[l + k].clone() * den_q1[l].clone() * den_q[k].clone();
            table.entries.insert((l, k), checked_div(&num, &den)?);
        }
    }
    Ok(table)
}

/// Exact rational coefficients; integer exponents must be present.
pub fn phi1_coeffs_exact(p: &Phi1Params<BigRational>, degree: usize) -> Result<CoeffTable<BigRational>> {
    p.require_exponents()?;
    phi1_coefficients(p, degree)
}

/// Coefficients of `2Phi1(a, 0; c; q, z)` up to `z^degree`.
pub fn phi2_1_coefficients<T: Scalar>(a_val: &T, c_val: &T, q: &T, degree: usize) -> Result<Vec<T>> {
    (0..=degree)
        .map(|n| {
            let num = q_pochhammer(a_val, q, n)?;
            let den = q_pochhammer(c_val, q, n)? * q_pochhammer(q, q, n)?;
            checked_div(&num, &den)
        })
        .collect()
}

/// Coefficients of the right side of the summation formula,
/// `sum_l (q^a)_l (q1^b)_l / [(q^c)_l (q1)_l] x^l 2Phi1(q^{a+l}, 0; q^{c+l}; q, y)`,
/// expanded through total degree `degree`.
pub fn phi1_summation_coeffs<T: Scalar>(p: &Phi1Params<T>, degree: usize) -> Result<CoeffTable<T>> {
    p.check_poles(degree)?;
    let (q, q1) = (p.q(), p.q1());
    let mut table = CoeffTable::zeros(degree);
    let mut qa_l = p.qa().clone();
    let mut qc_l = p.qc().clone();
    for l in 0..=degree {
        let outer_num = q_pochhammer(p.qa(), q, l)? * q_pochhammer(p.q1b(), q1, l)?;
        let outer_den = q_pochhammer(p.qc(), q, l)? * q_pochhammer(q1, q1, l)?;
        let outer = checked_div(&outer_num, &outer_den)?;
        let inner = phi2_1_coefficients(&qa_l, &qc_l, q, degree - l)?;
        for (k, d) in inner.into_iter().enumerate() {
            table.entries.insert((l, k), outer.clone() * d);
        }
        qa_l = qa_l * q.clone();
        qc_l = qc_l * q.clone();
    }
    Ok(table)
}
