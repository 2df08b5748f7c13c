//! Sparse commutative polynomials: the entry ring for generic matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ring::Ring;

/// Which matrix coordinate an indeterminate parametrizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    DiagA,
    CornerB,
    SkewC,
}

/// Indeterminate `a_k`, `b_k` or `c_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommVar {
    pub role: Role,
    pub index: u32,
}

impl CommVar {
    pub fn a(index: u32) -> CommVar {
        CommVar { role: Role::DiagA, index }
    }

    pub fn b(index: u32) -> CommVar {
        CommVar { role: Role::CornerB, index }
    }

    pub fn c(index: u32) -> CommVar {
        CommVar { role: Role::SkewC, index }
    }
}

impl fmt::Display for CommVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.role {
            Role::DiagA => 'a',
            Role::CornerB => 'b',
            Role::SkewC => 'c',
        };
        write!(f, "{r}{}", self.index)
    }
}

/// Exponent vector, sorted by variable, without zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(CommVar, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: CommVar) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn exponents(&self) -> &[(CommVar, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommPolynomial {
    field: Field,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl CommPolynomial {
    pub fn zero(field: Field) -> CommPolynomial {
        CommPolynomial { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> CommPolynomial {
        let mut p = CommPolynomial::zero(c.field());
        p.add_term(Monomial::one(), &c);
        p
    }

    pub fn var(field: Field, v: CommVar) -> CommPolynomial {
        let mut p = CommPolynomial::zero(field);
        p.add_term(Monomial::var(v), &FieldElement::one(field));
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn variables(&self) -> BTreeSet<CommVar> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().checked_add(c).expect("same field");
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &CommPolynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch { left: self.field, right: other.field })
        }
    }

    pub fn checked_add(&self, other: &CommPolynomial) -> Result<CommPolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CommPolynomial) -> Result<CommPolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.negate());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &CommPolynomial) -> Result<CommPolynomial> {
        self.check(other)?;
        let mut out = CommPolynomial::zero(self.field);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), &a.checked_mul(b)?);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<CommPolynomial> {
        if c.field() != self.field {
            return Err(Error::DescriptorMismatch { left: self.field, right: c.field() });
        }
        let mut out = CommPolynomial::zero(self.field);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &a.checked_mul(c)?);
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> CommPolynomial {
        let mut base = self.clone();
        let mut acc = CommPolynomial::constant(FieldElement::one(self.field));
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = Ring::mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluates at a point covering every variable of `self`.
    pub fn eval_at(&self, point: &BTreeMap<CommVar, FieldElement>) -> Result<FieldElement> {
        let mut acc = FieldElement::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = point.get(&v).ok_or_else(|| Error::MissingAssignment(v.to_string()))?;
                t = t.checked_mul(&x.pow(e as u64))?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }
}

/// Lexicographic order with `a1 > a2 > .. > b1 > ..`: larger exponents of
/// earlier variables come first.
fn lex_cmp(m: &Monomial, n: &Monomial) -> std::cmp::Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (m.0.get(i), n.0.get(j)) {
            (None, None) => return std::cmp::Ordering::Equal,
            (Some(_), None) => return std::cmp::Ordering::Less,
            (None, Some(_)) => return std::cmp::Ordering::Greater,
            (Some(&(u, e)), Some(&(v, f))) => match u.cmp(&v) {
                std::cmp::Ordering::Less => return std::cmp::Ordering::Less,
                std::cmp::Ordering::Greater => return std::cmp::Ordering::Greater,
                std::cmp::Ordering::Equal if e != f => return f.cmp(&e),
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

impl fmt::Display for CommPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| lex_cmp(a.0, b.0)));
        for (i, (m, c)) in v.into_iter().enumerate() {
            let (negative, mag) = c.split_sign();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if mag.is_compound() { format!("({mag})") } else { mag.to_string() };
            if m.0.is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Ring for CommPolynomial {
    fn field(&self) -> Field {
        self.field
    }

    fn zero_like(&self) -> Self {
        CommPolynomial::zero(self.field)
    }

    fn one_like(&self) -> Self {
        CommPolynomial::constant(FieldElement::one(self.field))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("operands over the same field")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("operands over the same field")
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("operands over the same field")
    }

    fn neg(&self) -> Self {
        self.scale(&FieldElement::from_i64(self.field, -1)).expect("same field")
    }

    fn scalar_like(&self, c: &FieldElement) -> Self {
        CommPolynomial::constant(c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(field: Field, v: CommVar) -> CommPolynomial {
        CommPolynomial::var(field, v)
    }

    #[test]
    fn binomial_squares_and_freshman_dream() {
        let q = Field::Rational;
        let s = Ring::add(&var(q, CommVar::a(1)), &var(q, CommVar::b(1)));
        assert_eq!(s.pow(2).to_string(), "a1^2 + 2*a1*b1 + b1^2");
        let f3 = Field::Prime(3);
        let s = Ring::add(&var(f3, CommVar::a(1)), &var(f3, CommVar::b(1)));
        assert_eq!(s.pow(3), Ring::add(&var(f3, CommVar::a(1)).pow(3), &var(f3, CommVar::b(1)).pow(3)));
        assert!(Ring::mul(&var(q, CommVar::a(1)), &CommPolynomial::zero(q)).is_zero());
    }

    #[test]
    fn zero_and_equality() {
        let q = Field::Rational;
        let m = Ring::mul(&var(q, CommVar::a(1)), &var(q, CommVar::b(2)));
        assert!(Ring::sub(&m, &m).is_zero());
        assert_ne!(var(q, CommVar::a(1)), var(q, CommVar::b(1)));
    }

    #[test]
    fn evaluation() {
        let f5 = Field::Prime(5);
        let p = var(f5, CommVar::a(1)).pow(2);
        let point: BTreeMap<_, _> = [(CommVar::a(1), FieldElement::from_i64(f5, 3))].into();
        assert_eq!(p.eval_at(&point).unwrap(), FieldElement::from_i64(f5, 4));
        assert!(CommPolynomial::zero(f5).eval_at(&BTreeMap::new()).unwrap().is_zero());
        assert_eq!(
            var(f5, CommVar::c(2)).eval_at(&point),
            Err(Error::MissingAssignment("c2".into()))
        );
    }

    #[test]
    fn vanishing_on_points_does_not_imply_zero() {
        let f3 = Field::Prime(3);
        let x = var(f3, CommVar::a(1));
        let p = Ring::sub(&x.pow(3), &x);
        assert!(!p.is_zero());
        for e in f3.enumerate().unwrap() {
            let point: BTreeMap<_, _> = [(CommVar::a(1), e)].into();
            assert!(p.eval_at(&point).unwrap().is_zero());
        }
    }
}
