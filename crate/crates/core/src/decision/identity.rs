use std::fmt;

use rayon::prelude::*;

use crate::commpoly::CommPolynomial;
use crate::error::Result;
use crate::field::FieldElement;
use crate::freealg::StarPolynomial;
use crate::ut2::{evaluate, generic_assignment, Assignment, InvolutionKind, UT2Matrix};

use super::eval::{FiniteEvaluator, Mat};
use super::linalg::{Exact, Scalars, Tables};
use super::mode::EvalMode;

/// Why a property fails.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// First failing assignment in enumeration order, with the value there.
    Concrete { assignment: Assignment<FieldElement>, value: UT2Matrix<FieldElement> },
    /// Generic evaluation with a nonvanishing obstruction.
    Generic { value: UT2Matrix<CommPolynomial> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Concrete { assignment, value } => {
                if assignment.values().is_empty() {
                    write!(f, "value {value}")
                } else {
                    write!(f, "{assignment} gives {value}")
                }
            }
            Witness::Generic { value } => write!(f, "generic value {value}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Holds,
    Fails(Box<Witness>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Property {
    Identity,
    Central,
}

fn mat_ok<S: Scalars>(s: &S, m: &Mat<S::E>, p: Property) -> bool {
    match p {
        Property::Identity => m.iter().all(|x| s.is_zero(x)),
        Property::Central => s.is_zero(&m[1]) && m[0] == m[2],
    }
}

fn search<S: Scalars>(s: &S, f: &StarPolynomial, kind: InvolutionKind, p: Property) -> Result<Verdict> {
    let ev = FiniteEvaluator::new(s, f.variables(), kind)?;
    let (words, coeffs) = ev.compile(f);
    let bad = (0..ev.len())
        .into_par_iter()
        .find_first(|&i| !mat_ok(s, &ev.eval_compiled(&ev.matrices(i), &words, &coeffs), p));
    Ok(match bad {
        None => Verdict::Holds,
        Some(i) => {
            let assignment = ev.assignment(i);
            let value = evaluate(f, &assignment)?;
            Verdict::Fails(Box::new(Witness::Concrete { assignment, value }))
        }
    })
}

fn decide(f: &StarPolynomial, kind: InvolutionKind, mode: EvalMode, p: Property) -> Result<Verdict> {
    mode.check_field(f.field())?;
    match mode {
        EvalMode::FiniteExhaustive(field) => match Tables::new(field) {
            Ok(t) => search(&t, f, kind, p),
            Err(_) => search(&Exact::new(field), f, kind, p),
        },
        EvalMode::GenericChar0 | EvalMode::GenericCharP(_) => {
            let value = evaluate(f, &generic_assignment(f, kind))?;
            let ok = match p {
                Property::Identity => value.is_zero(),
                Property::Central => value.is_central(),
            };
            Ok(if ok { Verdict::Holds } else { Verdict::Fails(Box::new(Witness::Generic { value })) })
        }
    }
}

/// Whether `f` vanishes under every symmetry-respecting assignment.
pub fn is_identity(f: &StarPolynomial, kind: InvolutionKind, mode: EvalMode) -> Result<Verdict> {
    decide(f, kind, mode, Property::Identity)
}

/// Whether every evaluation of `f` is a scalar matrix.
pub fn is_central_poly(f: &StarPolynomial, kind: InvolutionKind, mode: EvalMode) -> Result<Verdict> {
    decide(f, kind, mode, Property::Central)
}

/// Whether `f - g` is an identity.
pub fn equal_mod_identities(
    f: &StarPolynomial,
    g: &StarPolynomial,
    kind: InvolutionKind,
    mode: EvalMode,
) -> Result<Verdict> {
    is_identity(&f.checked_sub(g)?, kind, mode)
}

/// Whether `f` is an identity plus a scalar. An identity vanishes at the
/// zero assignment, so the scalar can only be the constant term of `f`.
/// A failing witness is evaluated on `f` itself: its value differs from the
/// scalar `f` takes at the zero assignment.
pub fn in_identities_plus_scalars(f: &StarPolynomial, kind: InvolutionKind, mode: EvalMode) -> Result<Verdict> {
    let g = f.checked_sub(&StarPolynomial::constant(f.constant_term()))?;
    Ok(match is_identity(&g, kind, mode)? {
        Verdict::Holds => Verdict::Holds,
        Verdict::Fails(w) => match *w {
            Witness::Concrete { assignment, .. } => {
                let value = evaluate(f, &assignment)?;
                Verdict::Fails(Box::new(Witness::Concrete { assignment, value }))
            }
            Witness::Generic { .. } => {
                let value = evaluate(f, &generic_assignment(f, kind))?;
                Verdict::Fails(Box::new(Witness::Generic { value }))
            }
        },
    })
}

/// Generic value of `f`, for diagnostics.
pub fn generic_value(f: &StarPolynomial, kind: InvolutionKind) -> Result<UT2Matrix<CommPolynomial>> {
    evaluate(f, &generic_assignment(f, kind))
}
