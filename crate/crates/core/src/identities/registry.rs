//! Transcriptions of the contiguous relations, q-derivative formulas,
//! differential recursions and the summation formula.
//!
//! Ids run H2.1-H2.12 and H2.14-H2.27; there is no H2.13.
//! H2.1-H2.4 are also known in a form whose `y Phi1(q^{a+1}, q1^b; q^{c+1})`
//! prefactor carries an extra factor `(1 - q)`; that form is already false at
//! the coefficient of `y`. The registry carries the corrected relations and
//! the other form is kept in [`printed_errata`] so the harness can show it
//! fails.

use std::sync::OnceLock;

use super::expr::{Atom, CoeffExpr};
use super::{Constraint, IdentitySpec, IdentityTerm, Scale};
use crate::qcore::Base;

fn q() -> CoeffExpr {
    CoeffExpr::atom(Atom::Q)
}
fn q1() -> CoeffExpr {
    CoeffExpr::atom(Atom::Q1)
}
fn qa() -> CoeffExpr {
    CoeffExpr::atom(Atom::Qa)
}
fn q1b() -> CoeffExpr {
    CoeffExpr::atom(Atom::Q1b)
}
fn qc() -> CoeffExpr {
    CoeffExpr::atom(Atom::Qc)
}
fn x() -> CoeffExpr {
    CoeffExpr::atom(Atom::X)
}
fn y() -> CoeffExpr {
    CoeffExpr::atom(Atom::Y)
}
/// `q^{c-1}`
fn qc_m1() -> CoeffExpr {
    qc() / q()
}

fn t(coeff: impl Into<CoeffExpr>) -> IdentityTerm {
    IdentityTerm::phi1(coeff)
}

fn qa_ne_1() -> Constraint {
    Constraint::not_one("q^a != 1", qa())
}
fn qc_ne_1() -> Constraint {
    Constraint::not_one("q^c != 1", qc())
}
fn qc_m1_ne_1() -> Constraint {
    Constraint::not_one("q^(c-1) != 1", qc_m1())
}

fn spec(id: &str, lhs: Vec<IdentityTerm>, rhs: Vec<IdentityTerm>, constraints: Vec<Constraint>) -> IdentitySpec {
    IdentitySpec {
        id: id.to_string(),
        lhs,
        rhs,
        constraints,
    }
}

use Scale::{One, Q, Q1};

/// Relations 2.1-2.4 with the y-term prefactor `q^a y/(1-q^c)` (resp.
/// `q^{c-1}(1-q^a) y/((1-q^{c-1})(1-q^c))`) multiplied by `extra`.
fn first_order_contiguous(extra: impl Fn() -> CoeffExpr, suffix: &str) -> Vec<IdentitySpec> {
    let y_term_a = || qa() * extra() * y() / (1 - qc());
    let y_term_c = || qc_m1() * extra() * (1 - qa()) * y() / ((1 - qc_m1()) * (1 - qc()));
    vec![
        spec(
            &format!("H2.1{suffix}"),
            vec![t(1).shift(1, 0, 0)],
            vec![
                t(1),
                t(y_term_a()).shift(1, 0, 1),
                t(qa() / (1 - qa())).scale(One, Q),
                t(-(qa() / (1 - qa()))).scale(Q, Q),
            ],
            vec![qa_ne_1(), qc_ne_1()],
        ),
        spec(
            &format!("H2.2{suffix}"),
            vec![t(1).shift(1, 0, 0)],
            vec![
                t(1 / (1 - qa())),
                t(-(qa() / (1 - qa()))).scale(Q, One),
                t(y_term_a()).shift(1, 0, 1).scale(Q, One),
            ],
            vec![qa_ne_1(), qc_ne_1()],
        ),
        spec(
            &format!("H2.3{suffix}"),
            vec![t(1).shift(0, 0, -1)],
            vec![
                t(1),
                t(y_term_c()).shift(1, 0, 1),
                t(qc_m1() / (1 - qc_m1())).scale(One, Q),
                t(-(qc_m1() / (1 - qc_m1()))).scale(Q, Q),
            ],
            vec![qc_ne_1(), qc_m1_ne_1()],
        ),
        spec(
            &format!("H2.4{suffix}"),
            vec![t(1).shift(0, 0, -1)],
            vec![
                t(1 / (1 - qc_m1())),
                t(-(qc_m1() / (1 - qc_m1()))).scale(Q, One),
                t(y_term_c()).shift(1, 0, 1).scale(Q, One),
            ],
            vec![qc_m1_ne_1()],
        ),
    ]
}

fn build_registry() -> Vec<IdentitySpec> {
    let mut out = first_order_contiguous(|| CoeffExpr::from(1), "");

    // Contiguous relations in a and c
    out.push(spec(
        "H2.5",
        vec![t(1 - qa()).shift(1, 0, 0)],
        vec![
            t(1 - qa() * q() / qc()),
            t(qa() * q() / qc() * (1 - qc_m1())).shift(0, 0, -1),
        ],
        vec![],
    ));
    out.push(spec(
        "H2.6",
        vec![t(1).shift(0, 0, 1)],
        vec![t(qc()).shift(0, 0, 1).scale(Q, Q), t(1 - qc())],
        vec![],
    ));
    out.push(spec(
        "H2.7",
        vec![t(1).shift(-1, 0, 0)],
        vec![t(qa() / q()).shift(-1, 0, 0).scale(Q, Q), t(1 - qa() / q())],
        vec![],
    ));
    out.push(spec(
        "H2.8",
        vec![t(1 - qa()).shift(1, 0, 1)],
        vec![t(1 - qa() / qc()).shift(0, 0, 1), t(qa() / qc() * (1 - qc()))],
        vec![],
    ));
    out.push(spec(
        "H2.9",
        vec![t(1 / qc() * (1 - qa())).shift(1, 0, 1)],
        vec![
            t(1 - qa() / qc()).shift(0, 0, 1).scale(Q, Q),
            t(1 / qc() * (1 - qc())),
        ],
        vec![],
    ));

    // First q-derivatives
    out.push(spec(
        "H2.10",
        vec![t(1 - q1b()).shift(0, 1, 0), t(q1b()).scale(Q1, One)],
        vec![t(1)],
        vec![],
    ));
    out.push(spec(
        "H2.11",
        vec![t(1).shift(0, 1, 0)],
        vec![t(1), t(x() * q1b() * (1 - qa()) / (1 - qc())).shift(1, 1, 1)],
        vec![qc_ne_1()],
    ));
    out.push(spec(
        "H2.12",
        vec![t(1).shift(0, 1, 0)],
        vec![t(1).scale(Q1, One), t(x() * (1 - qa()) / (1 - qc())).shift(1, 1, 1)],
        vec![qc_ne_1()],
    ));

    // Higher q-derivatives. H2.14-H2.16 are instantiated at
    // r = 2, s = 2 and (r, s) = (1, 1).
    out.push(spec(
        "H2.14",
        vec![t(1).dx(2, Base::Q1)],
        vec![t((1 - qa()) * (1 - qa() * q()) * (1 - q1b()) * (1 - q1b() * q1())
            / ((1 - q1()) * (1 - q1()) * (1 - qc()) * (1 - qc() * q())))
        .shift(2, 2, 2)],
        vec![],
    ));
    out.push(spec(
        "H2.15",
        vec![t(1).dy(2)],
        vec![t((1 - qa()) * (1 - qa() * q())
            / ((1 - q()) * (1 - q()) * (1 - qc()) * (1 - qc() * q())))
        .shift(2, 0, 2)],
        vec![],
    ));
    out.push(spec(
        "H2.16",
        vec![t(1).dx(1, Base::Q1).dy(1)],
        vec![t((1 - qa()) * (1 - qa() * q()) * (1 - q1b())
            / ((1 - q1()) * (1 - q()) * (1 - qc()) * (1 - qc() * q())))
        .shift(2, 1, 2)],
        vec![],
    ));
    out.push(spec(
        "H2.17",
        vec![t(1).dx(1, Base::Q1)],
        vec![t((1 - qa()) * (1 - q1b()) / ((1 - q1()) * (1 - qc()))).shift(1, 1, 1)],
        vec![],
    ));
    out.push(spec(
        "H2.18",
        vec![t(1).dy(1)],
        vec![t((1 - qa()) / ((1 - q()) * (1 - qc()))).shift(1, 0, 1)],
        vec![],
    ));

    // Differential recursions
    let b_factor = || (1 - q1b()) / ((1 - q1()) * q1b());
    out.push(spec(
        "H2.19",
        vec![t(x()).dx(1, Base::Q1)],
        vec![t(b_factor()).shift(0, 1, 0), t(-b_factor())],
        vec![],
    ));
    let b_factor = || (1 - q1b()) / (1 - q1());
    out.push(spec(
        "H2.20",
        vec![t(x()).dx(1, Base::Q1)],
        vec![t(b_factor()).shift(0, 1, 0), t(-b_factor()).scale(Q1, One)],
        vec![],
    ));
    out.push(spec(
        "H2.21",
        vec![t(1).dy(1)],
        vec![
            t(1 / (1 - q()) * ((1 - qa() / qc()) / (1 - qc()))).shift(0, 0, 1),
            t(1 / (1 - q()) * (qa() / qc())),
        ],
        vec![qc_ne_1()],
    ));
    out.push(spec(
        "H2.22",
        vec![t(1).dy(1)],
        vec![
            t(1 / (1 - q()) * (qc() * (1 - qa() / qc()) / (1 - qc())))
                .shift(0, 0, 1)
                .scale(Q, Q),
            t(1 / (1 - q())),
        ],
        vec![qc_ne_1()],
    ));

    // Derivatives of Phi1(x, xy)
    out.push(spec(
        "H2.23",
        vec![t(1 - qc_m1()).shift(0, 0, -1).at_x_xy()],
        vec![
            t(1 - qc_m1()).at_x_xy(),
            t((1 - q()) * qc_m1() * x()).at_x_xy().dx(1, Base::Q),
        ],
        vec![],
    ));
    out.push(spec(
        "H2.24",
        vec![t(1 - qa()).shift(1, 0, 0).at_x_xy()],
        vec![
            t(1 - qa()).at_x_xy(),
            t((1 - q()) * qa() * x()).at_x_xy().dx(1, Base::Q),
        ],
        vec![],
    ));
    out.push(spec(
        "H2.25",
        vec![t(1 - q1b()).shift(0, 1, 0)],
        vec![t(1 - q1b()), t(q1b() * (1 - q1()) * x()).dx(1, Base::Q1)],
        vec![],
    ));
    out.push(spec(
        "H2.26",
        vec![t(1 - q1b()).shift(0, 1, 0)],
        vec![
            t((1 - q1()) * x()).dx(1, Base::Q1),
            t(1 - q1b()).scale(Q1, One),
        ],
        vec![],
    ));

    // Summation formula
    out.push(spec("H2.27", vec![t(1)], vec![IdentityTerm::summation(1)], vec![]));
    out
}

/// All 26 relations, ordered by id.
pub fn registry() -> &'static [IdentitySpec] {
    static REGISTRY: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

/// Relations 2.1-2.4 exactly as printed, with ids suffixed `-printed`.
pub fn printed_errata() -> &'static [IdentitySpec] {
    static PRINTED: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    PRINTED.get_or_init(|| first_order_contiguous(|| 1 - q(), "-printed"))
}

/// Looks an id up in the registry, then among the printed forms.
pub fn find(id: &str) -> Option<&'static IdentitySpec> {
    registry()
        .iter()
        .chain(printed_errata().iter())
        .find(|s| s.id == id)
}
