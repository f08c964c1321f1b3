mod common;

use common::{coefficient, Products, default_float_grid, jackson_iterated, phi1_brute, phi2_1_brute, poch};
use num_bigint::BigInt;
use proptest::prelude::*;
use qhumbert::identities::{default_exact_arguments, default_exact_grid};
use qhumbert::phi1::{
    phi1_coeffs_exact, phi1_deriv_closed, phi1_eval, phi1_recurrence_coefficients, phi1_summation_eval,
    phi1_terms, phi2_1_eval,
};
use qhumbert::qcore::{Base, BasePower, QBases};
use qhumbert::scalar::relative_error;
use qhumbert::{Arguments, Phi1Params, Rational, SeriesOptions, C64};

fn c(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn params(q: f64, q1: f64, a: i64, b: i64, cc: i64) -> Phi1Params<C64> {
    Phi1Params::from_exponents(QBases::new(c(q), c(q1)).unwrap(), a, b, cc).unwrap()
}

#[test]
fn standard_point_matches_brute_force() {
    let p = params(0.5, 0.3, 1, 1, 2);
    let (x, y) = (c(0.2), c(0.1));
    let oracle = phi1_brute(&p, &x, &y, 60);
    let r = phi1_eval(&p, &Arguments::new(x, y), &SeriesOptions::default()).unwrap();
    assert!(relative_error(&r.value, &oracle) < 1e-14, "{} vs {}", r.value, oracle);
    assert!(r.converged);
}

#[test]
fn brute_force_on_the_float_grid() {
    let opt = SeriesOptions::default();
    for point in default_float_grid() {
        let oracle = phi1_brute(&point.params, &point.args.x, &point.args.y, 80);
        let r = phi1_eval(&point.params, &point.args, &opt).unwrap();
        assert!(relative_error(&r.value, &oracle) < 1e-13);
    }
}

#[test]
fn complex_arguments_and_bases() {
    let bases = QBases::new(C64::new(0.3, 0.4), C64::new(-0.2, 0.5)).unwrap();
    let p = Phi1Params::from_exponents(bases, 1, 2, 3).unwrap();
    let (x, y) = (C64::new(0.1, -0.3), C64::new(-0.25, 0.2));
    let oracle = phi1_brute(&p, &x, &y, 70);
    let r = phi1_eval(&p, &Arguments::new(x, y), &SeriesOptions::default()).unwrap();
    assert!(relative_error(&r.value, &oracle) < 1e-13);
}

#[test]
fn non_integer_parameter_values() {
    let bases = QBases::new(c(0.6), c(0.45)).unwrap();
    let p = Phi1Params::new(
        bases.clone(),
        BasePower::from_value(Base::Q, c(0.37)),
        BasePower::from_value(Base::Q1, c(-1.3)),
        BasePower::from_value(Base::Q, c(0.81)),
    )
    .unwrap();
    let (x, y) = (c(-0.4), c(0.3));
    let oracle = phi1_brute(&p, &x, &y, 90);
    let r = phi1_eval(&p, &Arguments::new(x, y), &SeriesOptions::default()).unwrap();
    assert!(relative_error(&r.value, &oracle) < 1e-13);
}

#[test]
fn real_scalars_agree_with_complex() {
    let bases = QBases::new(0.5f64, 0.3).unwrap();
    let p = Phi1Params::from_exponents(bases, 1, 1, 2).unwrap();
    let r = phi1_eval(&p, &Arguments::new(0.2, 0.1), &SeriesOptions::default()).unwrap();
    let z = phi1_eval(&params(0.5, 0.3, 1, 1, 2), &Arguments::new(c(0.2), c(0.1)), &SeriesOptions::default()).unwrap();
    assert!((r.value - z.value.re).abs() < 1e-15);
}

#[test]
fn phi2_1_matches_brute_force() {
    let r = phi2_1_eval(&c(0.5), &c(0.25), &c(0.5), &c(0.3), &SeriesOptions::default()).unwrap();
    let oracle = phi2_1_brute(&c(0.5), &c(0.25), &c(0.5), &c(0.3), 80);
    assert!(relative_error(&r.value, &oracle) < 1e-15);
}

#[test]
fn exact_coefficient_example() {
    let p = Phi1Params::from_exponents(QBases::new(rat(1, 2), rat(1, 3)).unwrap(), 1, 1, 2).unwrap();
    let t = phi1_coeffs_exact(&p, 12).unwrap();
    assert_eq!(t.get(1, 0), Some(&rat(2, 3)));
    for (&(l, k), v) in &t.entries {
        assert_eq!(v, &coefficient(&p, l, k));
    }
}

#[test]
fn recurrence_terms_equal_products_exactly() {
    for p in default_exact_grid() {
        let rec = phi1_recurrence_coefficients(&p, 40).unwrap();
        let prods = Products::new(&p, 40);
        for (&(l, k), v) in &rec.entries {
            assert_eq!(v, &prods.coefficient(l, k));
        }
        for arg in default_exact_arguments() {
            let terms = phi1_terms(&p, &arg, 20).unwrap();
            for (&(l, k), v) in &terms.entries {
                let expected = prods.coefficient(l, k) * common::pow(&arg.x, l) * common::pow(&arg.y, k);
                assert_eq!(v, &expected);
            }
        }
    }
}

#[test]
fn restriction_to_x_zero() {
    let opt = SeriesOptions::default();
    for point in default_float_grid() {
        let p = &point.params;
        let on_axis = phi1_eval(p, &Arguments::new(c(0.0), point.args.y), &opt).unwrap();
        let single = phi2_1_eval(p.qa(), p.qc(), p.q(), &point.args.y, &opt).unwrap();
        assert!(relative_error(&on_axis.value, &single.value) < 1e-12);
    }
}

#[test]
fn factorization_when_a_equals_c() {
    let opt = SeriesOptions::default();
    for (q, q1) in [(0.3, 0.5), (0.7, 0.3), (0.5, 0.7)] {
        for (a, b) in [(1, 1), (3, 2), (2, -1)] {
            let p = params(q, q1, a, b, a);
            for &(x, y) in &[(0.2, 0.1), (-0.3, 0.25), (0.35, -0.2)] {
                let got = phi1_eval(&p, &Arguments::new(c(x), c(y)), &opt).unwrap().value;
                let fx: C64 = (0..200)
                    .map(|l| poch(p.q1b(), p.q1(), l) / poch(p.q1(), p.q1(), l) * c(x).powu(l as u32))
                    .sum();
                let fy: C64 = (0..200).map(|k| c(y).powu(k as u32) / poch(p.q(), p.q(), k)).sum();
                assert!(relative_error(&got, &(fx * fy)) < 1e-10);
            }
        }
    }
}

#[test]
fn derivative_closed_forms_match_quotients() {
    let opt = SeriesOptions::default();
    let p = params(0.5, 0.3, 1, 1, 2);
    for x in [0.2, -0.2, 0.35, -0.35] {
        for y in [0.2, -0.2, 0.35, -0.35] {
            for r in 0..=2 {
                for s in 0..=2 {
                    let closed = phi1_deriv_closed(&p, &Arguments::new(c(x), c(y)), r, s, &opt).unwrap();
                    let oracle = jackson_iterated(&p, &c(x), &c(y), r, s, &opt);
                    assert!(relative_error(&closed.value, &oracle) < 1e-8, "r={r} s={s} x={x} y={y}");
                }
            }
        }
    }
}

#[test]
fn summation_evaluator_matches_double_series() {
    let opt = SeriesOptions::default();
    for point in default_float_grid() {
        let s = phi1_summation_eval(&point.params, &point.args, &opt).unwrap();
        let d = phi1_eval(&point.params, &point.args, &opt).unwrap();
        assert!(relative_error(&s.value, &d.value) < 1e-10);
        assert!((s.value - d.value).norm() <= 1e-14 + s.tail_estimate + d.tail_estimate);
    }
}

#[test]
fn truncated_exact_polynomial_bounds_float_value() {
    let opt = SeriesOptions::default();
    let p_exact = Phi1Params::from_exponents(QBases::new(rat(1, 2), rat(1, 3)).unwrap(), 1, 1, 2).unwrap();
    let p_float = params(0.5, 1.0 / 3.0, 1, 1, 2);
    let degree = 12;
    let table = phi1_coeffs_exact(&p_exact, degree).unwrap();
    let float_table: Vec<((usize, usize), f64)> = table
        .entries
        .iter()
        .map(|(&key, v)| (key, num_traits::ToPrimitive::to_f64(v).unwrap()))
        .collect();
    for &(x, y) in &[(0.2f64, 0.1f64), (-0.3, 0.25), (0.35, -0.2)] {
        let poly: f64 = float_table
            .iter()
            .map(|&((l, k), v)| v * x.powi(l as i32) * y.powi(k as i32))
            .sum();
        let full = phi1_eval(&p_float, &Arguments::new(c(x), c(y)), &opt).unwrap();
        let prods = Products::new(&p_float, 120);
        let mut discarded = 0.0;
        for l in 0..=120usize {
            for k in 0..=120usize {
                if l + k > degree {
                    discarded += (prods.coefficient(l, k) * c(x).powu(l as u32) * c(y).powu(k as u32)).norm();
                }
            }
        }
        assert!((full.value.re - poly).abs() <= discarded + 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_agrees_with_brute_force(
        q in 0.1f64..0.8, q1 in 0.1f64..0.8,
        a in -2i64..4, b in -2i64..4, cc in 1i64..5,
        x in -0.4f64..0.4, y in -0.4f64..0.4,
    ) {
        let p = params(q, q1, a, b, cc);
        let oracle = phi1_brute(&p, &c(x), &c(y), 70);
        let r = phi1_eval(&p, &Arguments::new(c(x), c(y)), &SeriesOptions::default()).unwrap();
        prop_assert!((r.value - oracle).norm() <= 1e-13 * oracle.norm().max(1.0));
    }
}
