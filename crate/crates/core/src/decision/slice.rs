//! Linear algebra inside one multidegree slice.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::commpoly::{CommPolynomial, Monomial};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::freealg::{MultiDegree, StarPolynomial, Word};
use crate::ut2::{evaluate, generic_assignment_for, InvolutionKind, UT2Matrix};

use super::eval::FiniteEvaluator;
use super::linalg::{null_space, Echelon, Exact, Scalars, SpanBasis, Tables};
use super::mode::EvalMode;

/// All words of one multidegree, in term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slice {
    degree: MultiDegree,
    words: Vec<Word>,
}

impl Slice {
    pub fn new(degree: MultiDegree) -> Slice {
        let words = degree.words();
        Slice { degree, words }
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn total(&self) -> usize {
        self.degree.total() as usize
    }

    /// Whether every term of `f` lies in this slice.
    pub fn contains(&self, f: &StarPolynomial) -> bool {
        f.terms().keys().all(|w| w.multi_degree() == self.degree)
    }

    /// The slices of [`MultiDegree::consecutive_up_to`].
    pub fn all_up_to(max_total: u32) -> Vec<Slice> {
        MultiDegree::consecutive_up_to(max_total).into_iter().map(Slice::new).collect()
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Identity,
    Central,
}

const CHUNK: u64 = 2048;

/// Rows of the exhaustive constraint system, reduced in parallel chunks.
fn exhaustive_constraints<S: Scalars>(
    s: &S,
    slice: &Slice,
    kind: InvolutionKind,
    target: Target,
) -> Result<(Vec<usize>, Vec<Vec<S::E>>)> {
    let n = slice.dim();
    let ev = FiniteEvaluator::new(s, slice.degree.variables(), kind)?;
    let total = ev.len();
    let chunks = total.div_ceil(CHUNK);
    let saturated = AtomicBool::new(false);
    let partial: Vec<Echelon<'_, S>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut e = Echelon::new(s, n);
            for i in (c * CHUNK)..((c + 1) * CHUNK).min(total) {
                if e.is_full() || saturated.load(Ordering::Relaxed) {
                    break;
                }
                let values = ev.eval_words(&ev.matrices(i), &slice.words);
                let e12: Vec<S::E> = values.iter().map(|m| m[1].clone()).collect();
                e.insert_dense(&e12);
                match target {
                    Target::Identity => {
                        let e11: Vec<S::E> = values.iter().map(|m| m[0].clone()).collect();
                        let e22: Vec<S::E> = values.iter().map(|m| m[2].clone()).collect();
                        e.insert_dense(&e11);
                        e.insert_dense(&e22);
                    }
                    Target::Central => {
                        let diff: Vec<S::E> = values.iter().map(|m| s.sub(&m[0], &m[2])).collect();
                        e.insert_dense(&diff);
                    }
                }
            }
            if e.is_full() {
                saturated.store(true, Ordering::Relaxed);
            }
            e
        })
        .collect();
    let mut acc = Echelon::new(s, n);
    for e in partial {
        if acc.is_full() {
            break;
        }
        acc.merge(e);
    }
    Ok(acc.rref())
}

fn exhaustive_space<S: Scalars>(s: &S, slice: &Slice, kind: InvolutionKind, target: Target) -> Result<SpanBasis> {
    let (pivots, rows) = exhaustive_constraints(s, slice, kind, target)?;
    let kernel = null_space(s, slice.dim(), &pivots, &rows);
    let mut e = Echelon::new(s, slice.dim());
    for v in &kernel {
        e.insert_dense(v);
    }
    Ok(SpanBasis::from_echelon(slice.words.clone(), &e))
}

/// Entry polynomials of every slice word at the generic assignment.
fn generic_values(slice: &Slice, kind: InvolutionKind, field: Field) -> Result<Vec<UT2Matrix<CommPolynomial>>> {
    let a = generic_assignment_for(slice.degree.variables(), kind, field);
    slice
        .words
        .par_iter()
        .map(|w| evaluate(&StarPolynomial::word(field, w.clone()), &a))
        .collect()
}

fn generic_space(slice: &Slice, kind: InvolutionKind, field: Field, target: Target) -> Result<SpanBasis> {
    let values = generic_values(slice, kind, field)?;
    let entries: Vec<Vec<CommPolynomial>> = match target {
        Target::Identity => values.iter().map(|m| vec![m.e11.clone(), m.e12.clone(), m.e22.clone()]).collect(),
        Target::Central => values
            .iter()
            .map(|m| vec![m.e12.clone(), m.e11.checked_sub(&m.e22).expect("same field")])
            .collect(),
    };
    let s = Exact::new(field);
    let n = slice.dim();
    let slots = entries.first().map(Vec::len).unwrap_or(0);
    let mut e = Echelon::new(&s, n);
    for k in 0..slots {
        let mut rows: BTreeMap<&Monomial, Vec<FieldElement>> = BTreeMap::new();
        for (j, polys) in entries.iter().enumerate() {
            for (m, c) in polys[k].terms() {
                rows.entry(m).or_insert_with(|| vec![FieldElement::zero(field); n])[j] = c.clone();
            }
        }
        for r in rows.values() {
            e.insert_dense(r);
        }
    }
    let (pivots, rows) = e.rref();
    let kernel = null_space(&s, n, &pivots, &rows);
    Ok(SpanBasis::from_rows(field, slice.words.clone(), &kernel))
}

fn space(slice: &Slice, kind: InvolutionKind, mode: EvalMode, target: Target) -> Result<SpanBasis> {
    mode.validate()?;
    match mode {
        EvalMode::FiniteExhaustive(field) => match Tables::new(field) {
            Ok(t) => exhaustive_space(&t, slice, kind, target),
            Err(_) => exhaustive_space(&Exact::new(field), slice, kind, target),
        },
        _ => generic_space(slice, kind, mode.field(), target),
    }
}

/// The identities inside `slice`.
pub fn identity_space_of_slice(slice: &Slice, kind: InvolutionKind, mode: EvalMode) -> Result<SpanBasis> {
    space(slice, kind, mode, Target::Identity)
}

/// The central polynomials inside `slice`.
pub fn central_space_of_slice(slice: &Slice, kind: InvolutionKind, mode: EvalMode) -> Result<SpanBasis> {
    space(slice, kind, mode, Target::Central)
}

/// Coordinates of `f` with respect to the rows of `basis`, if it is a member.
pub fn membership(f: &StarPolynomial, basis: &SpanBasis) -> Result<Option<Vec<FieldElement>>> {
    basis.membership(f)
}

/// Rank diagnostics of a proposed complement of the identities in a slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementCheck {
    pub slice_dim: usize,
    pub identity_dim: usize,
    pub basis_count: usize,
    /// Rank of the identities together with the basis elements.
    pub combined_rank: usize,
}

impl ComplementCheck {
    /// The basis elements are independent modulo the identities.
    pub fn independent(&self) -> bool {
        self.combined_rank == self.identity_dim + self.basis_count
    }

    /// Identities and basis together span the slice.
    pub fn spanning(&self) -> bool {
        self.combined_rank == self.slice_dim
    }

    pub fn is_complement(&self) -> bool {
        self.independent() && self.spanning()
    }

    fn error(&self) -> Error {
        Error::BasisNotComplementary {
            slice_dim: self.slice_dim,
            identity_dim: self.identity_dim,
            basis_count: self.basis_count,
            combined_rank: self.combined_rank,
        }
    }
}

struct Tagged {
    field: Field,
    n: usize,
    identity_dim: usize,
    basis_count: usize,
    rows: Vec<Vec<FieldElement>>,
}

fn tagged_system(basis: &[StarPolynomial], slice: &Slice, kind: InvolutionKind, mode: EvalMode) -> Result<Tagged> {
    let field = mode.field();
    for b in basis {
        mode.check_field(b.field())?;
        if !slice.contains(b) {
            return Err(Error::UniverseMismatch(format!("{b} is not in slice {slice}")));
        }
    }
    let ids = identity_space_of_slice(slice, kind, mode)?;
    let n = slice.dim();
    let width = n + basis.len();
    let mut rows = Vec::new();
    for r in ids.rows() {
        let mut v = r.clone();
        v.resize(width, FieldElement::zero(field));
        rows.push(v);
    }
    for (j, b) in basis.iter().enumerate() {
        let mut v = ids.vector_of(b)?;
        v.resize(width, FieldElement::zero(field));
        v[n + j] = FieldElement::one(field);
        rows.push(v);
    }
    Ok(Tagged { field, n, identity_dim: ids.dim(), basis_count: basis.len(), rows })
}

/// Compares `basis` against the identity space of `slice`.
pub fn check_complement(
    basis: &[StarPolynomial],
    slice: &Slice,
    kind: InvolutionKind,
    mode: EvalMode,
) -> Result<ComplementCheck> {
    let t = tagged_system(basis, slice, kind, mode)?;
    let s = Exact::new(t.field);
    let mut e = Echelon::new(&s, t.n + t.basis_count);
    for r in &t.rows {
        e.insert_dense(r);
    }
    let combined_rank = e.rows().filter(|(c, _)| *c < t.n).count();
    Ok(ComplementCheck { slice_dim: t.n, identity_dim: t.identity_dim, basis_count: t.basis_count, combined_rank })
}

/// Unique `beta` with `f - sum beta_j basis_j` an identity, provided the
/// basis complements the identities in `slice`.
pub fn quotient_coordinates(
    f: &StarPolynomial,
    basis: &[StarPolynomial],
    slice: &Slice,
    kind: InvolutionKind,
    mode: EvalMode,
) -> Result<Vec<FieldElement>> {
    mode.check_field(f.field())?;
    if !slice.contains(f) {
        return Err(Error::UniverseMismatch(format!("{f} is not in slice {slice}")));
    }
    let t = tagged_system(basis, slice, kind, mode)?;
    let s = Exact::new(t.field);
    let width = t.n + t.basis_count;
    let mut e = Echelon::new(&s, width);
    for r in &t.rows {
        e.insert_dense(r);
    }
    let combined_rank = e.rows().filter(|(c, _)| *c < t.n).count();
    let check = ComplementCheck { slice_dim: t.n, identity_dim: t.identity_dim, basis_count: t.basis_count, combined_rank };
    if !check.is_complement() {
        return Err(check.error());
    }
    let target = SpanBasis::zero(t.field, slice.words.to_vec()).vector_of(f)?;
    let sparse = target.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let rest = e.reduce(sparse);
    debug_assert!(rest.iter().all(|(c, _)| *c >= t.n), "slice part reduces to zero");
    let mut beta = vec![FieldElement::zero(t.field); t.basis_count];
    for (c, x) in rest {
        beta[c - t.n] = x.negate();
    }
    Ok(beta)
}
