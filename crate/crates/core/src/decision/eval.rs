//! Fast evaluation of words and polynomials over every assignment of a
//! finite field, on a [`Scalars`] backend.

use std::collections::HashMap;

use crate::error::Result;
use crate::freealg::{StarPolynomial, VarKind, Variable, Word};
use crate::ut2::{Assignment, ExhaustiveAssignments, InvolutionKind};

use super::linalg::Scalars;

/// Entries `[e11, e12, e22]`.
pub type Mat<E> = [E; 3];

pub struct FiniteEvaluator<'s, S: Scalars> {
    s: &'s S,
    all: ExhaustiveAssignments,
    lifted: Vec<S::E>,
    slot: HashMap<Variable, usize>,
}

impl<'s, S: Scalars> FiniteEvaluator<'s, S> {
    pub fn new(s: &'s S, vars: impl IntoIterator<Item = Variable>, kind: InvolutionKind) -> Result<Self> {
        let all = ExhaustiveAssignments::new(vars, kind, s.field())?;
        let lifted = s.field().enumerate()?.iter().map(|e| s.lift(e)).collect();
        let slot = all.variables().iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Ok(FiniteEvaluator { s, all, lifted, slot })
    }

    pub fn len(&self) -> u64 {
        self.all.len()
    }

    pub fn assignment(&self, i: u64) -> Assignment<crate::field::FieldElement> {
        self.all.get(i)
    }

    pub fn mul(&self, a: &Mat<S::E>, b: &Mat<S::E>) -> Mat<S::E> {
        let s = self.s;
        [
            s.mul(&a[0], &b[0]),
            s.add(&s.mul(&a[0], &b[1]), &s.mul(&a[1], &b[2])),
            s.mul(&a[2], &b[2]),
        ]
    }

    pub fn identity(&self) -> Mat<S::E> {
        [self.s.one(), self.s.zero(), self.s.one()]
    }

    /// Matrices of the variables at the `i`-th assignment, in variable order.
    pub fn matrices(&self, i: u64) -> Vec<Mat<S::E>> {
        let digits = self.all.digits(i);
        let s = self.s;
        let kind = self.all.kind();
        let mut out = Vec::with_capacity(self.all.variables().len());
        let mut at = 0;
        for v in self.all.variables() {
            let base = at;
            let x = |k: usize| self.lifted[digits[base + k]].clone();
            let m = match (kind, v.kind) {
                (InvolutionKind::Star, VarKind::Y) => [x(0), x(1), x(0)],
                (InvolutionKind::Star, VarKind::Z) => [x(0), s.zero(), s.neg(&x(0))],
                (InvolutionKind::S, VarKind::Y) => [x(0), s.zero(), x(0)],
                (InvolutionKind::S, VarKind::Z) => [x(0), x(1), s.neg(&x(0))],
            };
            at += crate::ut2::coordinate_count(kind, *v);
            out.push(m);
        }
        out
    }

    /// Values of `words` (sorted, so consecutive words share prefixes).
    pub fn eval_words(&self, mats: &[Mat<S::E>], words: &[Word]) -> Vec<Mat<S::E>> {
        let mut stack: Vec<Mat<S::E>> = vec![self.identity()];
        let mut prev: &[Variable] = &[];
        let mut out = Vec::with_capacity(words.len());
        for w in words {
            let letters = w.letters();
            let common = prev.iter().zip(letters).take_while(|(a, b)| a == b).count();
            stack.truncate(common + 1);
            for v in &letters[common..] {
                let next = self.mul(stack.last().expect("nonempty"), &mats[self.slot[v]]);
                stack.push(next);
            }
            out.push(stack[letters.len()].clone());
            prev = letters;
        }
        out
    }

    /// Compiles `f` into words and lifted coefficients.
    pub fn compile(&self, f: &StarPolynomial) -> (Vec<Word>, Vec<S::E>) {
        let words: Vec<Word> = f.terms().keys().cloned().collect();
        let coeffs = f.terms().values().map(|c| self.s.lift(c)).collect();
        (words, coeffs)
    }

    pub fn eval_compiled(&self, mats: &[Mat<S::E>], words: &[Word], coeffs: &[S::E]) -> Mat<S::E> {
        let s = self.s;
        let values = self.eval_words(mats, words);
        let mut acc = [s.zero(), s.zero(), s.zero()];
        for (m, c) in values.iter().zip(coeffs) {
            for k in 0..3 {
                acc[k] = s.add(&acc[k], &s.mul(c, &m[k]));
            }
        }
        acc
    }
}
