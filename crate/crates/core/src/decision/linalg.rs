//! Exact linear algebra over the supported fields.
//!
//! Constraint and consequence rows are gathered into a sparse echelon form
//! (each row keyed by its leading column, leading coefficient 1). Spans are
//! published as dense reduced row-echelon matrices, which are canonical for
//! a fixed column order, so partial echelons built on different threads can
//! be merged in any order.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::freealg::{StarPolynomial, Word};

/// Arithmetic backend for elimination.
pub trait Scalars: Sync + Send {
    type E: Clone + PartialEq + Send + Sync + fmt::Debug;

    fn field(&self) -> Field;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn lift(&self, a: &FieldElement) -> Self::E;
    fn lower(&self, a: &Self::E) -> FieldElement;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

/// Arbitrary field arithmetic through [`FieldElement`].
#[derive(Clone, Debug)]
pub struct Exact {
    field: Field,
}

impl Exact {
    pub fn new(field: Field) -> Exact {
        Exact { field }
    }
}

impl Scalars for Exact {
    type E = FieldElement;

    fn field(&self) -> Field {
        self.field
    }
    fn zero(&self) -> FieldElement {
        FieldElement::zero(self.field)
    }
    fn one(&self) -> FieldElement {
        FieldElement::one(self.field)
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.checked_add(b).expect("same field")
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.checked_mul(b).expect("same field")
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        a.negate()
    }
    fn inv(&self, a: &FieldElement) -> FieldElement {
        a.inverse().expect("nonzero pivot")
    }
    fn lift(&self, a: &FieldElement) -> FieldElement {
        a.clone()
    }
    fn lower(&self, a: &FieldElement) -> FieldElement {
        a.clone()
    }
}

/// Finite field arithmetic through precomputed tables on residue indices.
#[derive(Clone, Debug)]
pub struct Tables {
    field: Field,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    elements: Vec<FieldElement>,
}

impl Tables {
    /// Largest field order served by tables.
    pub const MAX_ORDER: u64 = 1024;

    pub fn new(field: Field) -> Result<Tables> {
        let elements = field.enumerate()?;
        let q = elements.len();
        if q as u64 > Tables::MAX_ORDER {
            return Err(Error::InvalidField(format!("{field} is too large for table arithmetic")));
        }
        let r = |e: FieldElement| e.residue().expect("finite") as u16;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for i in 0..q {
            for j in i..q {
                let s = r(elements[i].checked_add(&elements[j]).expect("same field"));
                let p = r(elements[i].checked_mul(&elements[j]).expect("same field"));
                add[i * q + j] = s;
                add[j * q + i] = s;
                mul[i * q + j] = p;
                mul[j * q + i] = p;
            }
        }
        let neg = elements.iter().map(|e| r(e.negate())).collect();
        let inv = elements.iter().map(|e| if e.is_zero() { 0 } else { r(e.inverse().expect("nonzero")) }).collect();
        Ok(Tables { field, q, add, mul, neg, inv, elements })
    }

    pub fn order(&self) -> usize {
        self.q
    }
}

impl Scalars for Tables {
    type E = u16;

    fn field(&self) -> Field {
        self.field
    }
    fn zero(&self) -> u16 {
        0
    }
    fn one(&self) -> u16 {
        1
    }
    fn is_zero(&self, a: &u16) -> bool {
        *a == 0
    }
    fn add(&self, a: &u16, b: &u16) -> u16 {
        self.add[*a as usize * self.q + *b as usize]
    }
    fn mul(&self, a: &u16, b: &u16) -> u16 {
        self.mul[*a as usize * self.q + *b as usize]
    }
    fn neg(&self, a: &u16) -> u16 {
        self.neg[*a as usize]
    }
    fn inv(&self, a: &u16) -> u16 {
        assert!(*a != 0, "nonzero pivot");
        self.inv[*a as usize]
    }
    fn lift(&self, a: &FieldElement) -> u16 {
        a.residue().expect("finite field element") as u16
    }
    fn lower(&self, a: &u16) -> FieldElement {
        self.elements[*a as usize].clone()
    }
}

/// Sparse row: strictly increasing columns, nonzero entries.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Incremental echelon form. Every stored row has leading coefficient 1 and
/// a leading column no other stored row shares.
#[derive(Clone, Debug)]
pub struct Echelon<'s, S: Scalars> {
    s: &'s S,
    ncols: usize,
    by_pivot: Vec<Option<SparseRow<S::E>>>,
    rank: usize,
}

impl<'s, S: Scalars> Echelon<'s, S> {
    pub fn new(s: &'s S, ncols: usize) -> Echelon<'s, S> {
        Echelon { s, ncols, by_pivot: vec![None; ncols], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.ncols
    }

    /// `a + c * b` on sparse rows.
    fn axpy(&self, a: &SparseRow<S::E>, c: &S::E, b: &SparseRow<S::E>) -> SparseRow<S::E> {
        let s = self.s;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ca = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
            let cb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
            if ca < cb {
                out.push(a[i].clone());
                i += 1;
            } else if cb < ca {
                out.push((cb, s.mul(c, &b[j].1)));
                j += 1;
            } else {
                let v = s.add(&a[i].1, &s.mul(c, &b[j].1));
                if !s.is_zero(&v) {
                    out.push((ca, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Fully reduces `row`: the result has no entry in any pivot column.
    pub fn reduce(&self, mut row: SparseRow<S::E>) -> SparseRow<S::E> {
        let mut start = 0;
        loop {
            let Some(pos) = row[start..].iter().position(|(c, _)| self.by_pivot[*c].is_some()) else {
                return row;
            };
            let pos = start + pos;
            let (c, x) = row[pos].clone();
            let p = self.by_pivot[c].as_ref().expect("pivot row");
            let tail: SparseRow<S::E> = row.split_off(pos);
            let reduced = self.axpy(&tail, &self.s.neg(&x), p);
            start = row.len();
            row.extend(reduced);
        }
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow<S::E>) -> bool {
        if self.is_full() {
            return false;
        }
        let mut row = row;
        loop {
            let Some((c, x)) = row.first().cloned() else {
                return false;
            };
            match &self.by_pivot[c] {
                Some(p) => {
                    row = self.axpy(&row, &self.s.neg(&x), p);
                }
                None => {
                    let inv = self.s.inv(&x);
                    for e in row.iter_mut() {
                        e.1 = self.s.mul(&e.1, &inv);
                    }
                    self.by_pivot[c] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
    }

    pub fn insert_dense(&mut self, row: &[S::E]) -> bool {
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, e)| !self.s.is_zero(e))
            .map(|(i, e)| (i, e.clone()))
            .collect();
        self.insert(sparse)
    }

    pub fn merge(&mut self, other: Echelon<'s, S>) {
        for row in other.by_pivot.into_iter().flatten() {
            if self.is_full() {
                break;
            }
            self.insert(row);
        }
    }

    /// Stored rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow<S::E>)> {
        self.by_pivot.iter().enumerate().filter_map(|(c, r)| r.as_ref().map(|r| (c, r)))
    }

    /// Dense reduced row-echelon form: `(pivots, rows)`.
    pub fn rref(&self) -> (Vec<usize>, Vec<Vec<S::E>>) {
        let s = self.s;
        let mut done: Vec<Option<Vec<S::E>>> = vec![None; self.ncols];
        let pivots: Vec<usize> = self.rows().map(|(c, _)| c).collect();
        for &c in pivots.iter().rev() {
            let sparse = self.by_pivot[c].as_ref().expect("pivot row");
            let mut dense = vec![s.zero(); self.ncols];
            for (j, x) in sparse {
                dense[*j] = x.clone();
            }
            for &d in pivots.iter().filter(|&&d| d > c) {
                let x = dense[d].clone();
                if s.is_zero(&x) {
                    continue;
                }
                let other = done[d].as_ref().expect("reduced later pivot");
                for j in d..self.ncols {
                    if !s.is_zero(&other[j]) {
                        dense[j] = s.sub(&dense[j], &s.mul(&x, &other[j]));
                    }
                }
            }
            done[c] = Some(dense);
        }
        let rows = pivots.iter().map(|&c| done[c].take().expect("row")).collect();
        (pivots, rows)
    }
}

/// Null space of the dense RREF matrix `(pivots, rows)` with `ncols`
/// columns, one basis vector per free column.
pub fn null_space<S: Scalars>(s: &S, ncols: usize, pivots: &[usize], rows: &[Vec<S::E>]) -> Vec<Vec<S::E>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![s.zero(); ncols];
            v[f] = s.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = s.neg(&rows[i][f]);
            }
            v
        })
        .collect()
}

/// A subspace of the span of a fixed, term-ordered list of words, stored in
/// reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    field: Field,
    words: Vec<Word>,
    pivots: Vec<usize>,
    rows: Vec<Vec<FieldElement>>,
}

impl SpanBasis {
    /// Row space of `rows` (dense, over `words`).
    pub fn from_rows(field: Field, words: Vec<Word>, rows: &[Vec<FieldElement>]) -> SpanBasis {
        let s = Exact::new(field);
        let mut e = Echelon::new(&s, words.len());
        for r in rows {
            e.insert_dense(r);
        }
        SpanBasis::from_echelon(words, &e)
    }

    pub fn from_echelon<S: Scalars>(words: Vec<Word>, e: &Echelon<'_, S>) -> SpanBasis {
        let (pivots, rows) = e.rref();
        let rows = rows.iter().map(|r| r.iter().map(|x| e.s.lower(x)).collect()).collect();
        SpanBasis { field: e.s.field(), words, pivots, rows }
    }

    pub fn from_polynomials(field: Field, words: Vec<Word>, polys: &[StarPolynomial]) -> Result<SpanBasis> {
        let zero = SpanBasis::zero(field, words);
        let rows: Vec<Vec<FieldElement>> = polys.iter().map(|f| zero.vector_of(f)).collect::<Result<_>>()?;
        Ok(SpanBasis::from_rows(field, zero.words, &rows))
    }

    pub fn zero(field: Field, words: Vec<Word>) -> SpanBasis {
        SpanBasis { field, words, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn polynomial_of(&self, v: &[FieldElement]) -> StarPolynomial {
        StarPolynomial::from_terms(self.field, self.words.iter().cloned().zip(v.iter().cloned()))
            .expect("same field")
    }

    pub fn row_polynomials(&self) -> Vec<StarPolynomial> {
        self.rows.iter().map(|r| self.polynomial_of(r)).collect()
    }

    /// Coefficient vector of `f` over the word list.
    pub fn vector_of(&self, f: &StarPolynomial) -> Result<Vec<FieldElement>> {
        if f.field() != self.field {
            return Err(Error::DescriptorMismatch { left: self.field, right: f.field() });
        }
        let index: HashMap<&Word, usize> = self.words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut v = vec![FieldElement::zero(self.field); self.words.len()];
        for (w, c) in f.terms() {
            let i = *index.get(w).ok_or_else(|| Error::UniverseMismatch(format!("word {w} is not in the basis universe")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Coordinates of `f` with respect to the rows, or `None` when `f` is
    /// not in the span.
    pub fn membership(&self, f: &StarPolynomial) -> Result<Option<Vec<FieldElement>>> {
        let v = self.vector_of(f)?;
        let coords: Vec<FieldElement> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v;
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, r) in rest.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.checked_sub(&c.checked_mul(r)?)?;
                }
            }
        }
        if rest.iter().all(FieldElement::is_zero) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, f: &StarPolynomial) -> Result<bool> {
        Ok(self.membership(f)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &SpanBasis) -> Result<bool> {
        for f in self.row_polynomials() {
            if !other.contains(&f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of two subspaces over the same word list.
    pub fn sum(&self, other: &SpanBasis) -> Result<SpanBasis> {
        if self.words != other.words {
            return Err(Error::UniverseMismatch("subspaces live over different word lists".into()));
        }
        let rows: Vec<Vec<FieldElement>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(SpanBasis::from_rows(self.field, self.words.clone(), &rows))
    }
}
