//! Identities of the bibasic Humbert function encoded as data.
//!
//! Each [`IdentitySpec`] is two finite lists of [`IdentityTerm`]s. A term is a
//! closed-form prefactor times a parameter-shifted, argument-transformed and
//! possibly q-differentiated copy of `Phi1`. The same spec drives both the
//! float verifier (residuals) and the exact verifier (coefficient equality).

mod expand;
mod expr;
mod grid;
mod registry;
mod verify;

use serde::{Deserialize, Serialize};

use crate::qcore::Base;

pub use expand::{expand_term, ScalarEnv, SeriesEnv};
pub use expr::{Atom, CoeffExpr, Evaluator};
pub use grid::{
    default_exact_arguments, default_exact_grid, default_float_grid, FloatPoint,
    DEFAULT_EXACT_BASES, DEFAULT_EXPONENTS, DEFAULT_FLOAT_ARGUMENTS, DEFAULT_FLOAT_BASES,
};
pub use registry::{find, printed_errata, registry};
pub use verify::{
    eval_term, eval_term_counted, verify_all_exact, verify_all_float, verify_exact, verify_float,
    Mismatch, Mode, PointRecord, Status, VerifyReport,
};

/// Additive shifts of the exponents `a`, `b`, `c`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ParamShift {
    pub da: i64,
    pub db: i64,
    pub dc: i64,
}

/// Factor applied to an argument.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scale {
    #[default]
    One,
    Q,
    Q1,
}

/// Substitution applied to `(x, y)` before scaling.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PreMap {
    #[default]
    Identity,
    /// `(x, y) -> (x, x y)`
    XTimesY,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ArgTransform {
    pub pre_map: PreMap,
    pub x_scale: Scale,
    pub y_scale: Scale,
}

/// Jackson derivative orders. The x-derivative base is `q1` except in the
/// relations on `(x, x y)`, which differentiate in base `q`; y-derivatives
/// are always in base `q`. Derivatives act on the transformed function
/// `(x, y) -> Phi1(pre_map and scales applied)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Deriv {
    pub x_order: usize,
    pub x_base: Base,
    pub y_order: usize,
}

impl Default for Deriv {
    fn default() -> Self {
        Self {
            x_order: 0,
            x_base: Base::Q1,
            y_order: 0,
        }
    }
}

/// What the term evaluates before the prefactor is applied.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum TermKind {
    /// The double series itself.
    #[default]
    Phi1,
    /// The single-sum expansion in terms of `2Phi1(q^{a+l}, 0; q^{c+l}; q, y)`.
    SummationFormula,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityTerm {
    pub coeff: CoeffExpr,
    pub shift: ParamShift,
    pub transform: ArgTransform,
    pub deriv: Deriv,
    pub kind: TermKind,
}

impl IdentityTerm {
    pub fn phi1(coeff: impl Into<CoeffExpr>) -> Self {
        Self {
            coeff: coeff.into(),
            shift: ParamShift::default(),
            transform: ArgTransform::default(),
            deriv: Deriv::default(),
            kind: TermKind::Phi1,
        }
    }

    pub fn summation(coeff: impl Into<CoeffExpr>) -> Self {
        Self {
            kind: TermKind::SummationFormula,
            ..Self::phi1(coeff)
        }
    }

    pub fn shift(mut self, da: i64, db: i64, dc: i64) -> Self {
        self.shift = ParamShift { da, db, dc };
        self
    }

    pub fn scale(mut self, x_scale: Scale, y_scale: Scale) -> Self {
        self.transform.x_scale = x_scale;
        self.transform.y_scale = y_scale;
        self
    }

    pub fn at_x_xy(mut self) -> Self {
        self.transform.pre_map = PreMap::XTimesY;
        self
    }

    /// x-derivative of the given order in base `base`.
    pub fn dx(mut self, order: usize, base: Base) -> Self {
        self.deriv.x_order = order;
        self.deriv.x_base = base;
        self
    }

    pub fn dy(mut self, order: usize) -> Self {
        self.deriv.y_order = order;
        self
    }
}

/// A side condition of an identity.
#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    /// `expr != 1`, stated with the relation.
    NotOne { label: String, expr: CoeffExpr },
    /// `q^{c+dc}` avoids `{1, q^-1, q^-2, ...}`, the defining condition of the
    /// series, implied for every `Phi1` occurrence with c-shift `dc`.
    PoleFree { dc: i64 },
}

impl Constraint {
    pub fn not_one(label: &str, expr: CoeffExpr) -> Self {
        Constraint::NotOne {
            label: label.to_string(),
            expr,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Constraint::NotOne { label, .. } => label.clone(),
            Constraint::PoleFree { dc: 0 } => "q^c not in {1, q^-1, ...}".to_string(),
            Constraint::PoleFree { dc } => format!("q^(c{dc:+}) not in {{1, q^-1, ...}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySpec {
    pub id: String,
    pub lhs: Vec<IdentityTerm>,
    pub rhs: Vec<IdentityTerm>,
    /// Side conditions stated with the relation.
    pub constraints: Vec<Constraint>,
}

impl IdentitySpec {
    pub fn terms(&self) -> impl Iterator<Item = &IdentityTerm> {
        self.lhs.iter().chain(self.rhs.iter())
    }

    pub fn term_count(&self) -> usize {
        self.lhs.len() + self.rhs.len()
    }

    /// Stated side conditions plus the pole-freeness of every shifted `c`.
    pub fn all_constraints(&self) -> Vec<Constraint> {
        let mut out = self.constraints.clone();
        let mut shifts: Vec<i64> = self.terms().map(|t| t.shift.dc).collect();
        shifts.sort_unstable();
        shifts.dedup();
        out.extend(shifts.into_iter().map(|dc| Constraint::PoleFree { dc }));
        out
    }

    /// A copy with the prefactor of the `index`-th term (lhs first, then rhs)
    /// replaced by `coeff + delta`.
    pub fn perturbed(&self, index: usize, delta: i64) -> Self {
        let mut out = self.clone();
        let n_lhs = out.lhs.len();
        let term = if index < n_lhs {
            &mut out.lhs[index]
        } else {
            &mut out.rhs[index - n_lhs]
        };
        term.coeff = term.coeff.clone() + delta;
        out.id = format!("{}~{}{:+}", self.id, index, delta);
        out
    }
}
