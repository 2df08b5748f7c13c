use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::word::{MultiDegree, Variable, Word};

/// An element of the free algebra with involution over a field, stored as a
/// sparse map from words to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarPolynomial {
    field: Field,
    terms: BTreeMap<Word, FieldElement>,
}

impl StarPolynomial {
    pub fn zero(field: Field) -> StarPolynomial {
        StarPolynomial { field, terms: BTreeMap::new() }
    }

    pub fn one(field: Field) -> StarPolynomial {
        StarPolynomial::constant(FieldElement::one(field))
    }

    pub fn constant(c: FieldElement) -> StarPolynomial {
        StarPolynomial::monomial(c, Word::unit())
    }

    pub fn var(field: Field, v: Variable) -> StarPolynomial {
        StarPolynomial::monomial(FieldElement::one(field), Word::letter(v))
    }

    pub fn word(field: Field, w: Word) -> StarPolynomial {
        StarPolynomial::monomial(FieldElement::one(field), w)
    }

    pub fn monomial(c: FieldElement, w: Word) -> StarPolynomial {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        StarPolynomial { field, terms }
    }

    /// Sums duplicate words and drops zeros.
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Word, FieldElement)>) -> Result<StarPolynomial> {
        let mut p = StarPolynomial::zero(field);
        for (w, c) in terms {
            if c.field() != field {
                return Err(Error::DescriptorMismatch { left: field, right: c.field() });
            }
            p.add_term(w, &c);
        }
        Ok(p)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Word, FieldElement> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> FieldElement {
        self.terms.get(w).cloned().unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&Word::unit())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    fn check(&self, other: &StarPolynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch { left: self.field, right: other.field })
        }
    }

    pub fn checked_add(&self, other: &StarPolynomial) -> Result<StarPolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &StarPolynomial) -> Result<StarPolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &c.negate());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &StarPolynomial) -> Result<StarPolynomial> {
        self.check(other)?;
        let mut out = StarPolynomial::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &a.checked_mul(b)?);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<StarPolynomial> {
        if c.field() != self.field {
            return Err(Error::DescriptorMismatch { left: self.field, right: c.field() });
        }
        if c.is_zero() {
            return Ok(StarPolynomial::zero(self.field));
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, a)| (w.clone(), a.checked_mul(c).expect("same field")))
            .collect();
        Ok(StarPolynomial { field: self.field, terms })
    }

    pub fn negate(&self) -> StarPolynomial {
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a.negate())).collect();
        StarPolynomial { field: self.field, terms }
    }

    pub fn pow(&self, e: u32) -> StarPolynomial {
        let mut acc = StarPolynomial::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The involution: reverse each word, sign `(-1)^(number of z letters)`.
    pub fn involute(&self) -> StarPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(w, a)| {
                let c = if w.involution_sign() < 0 { a.negate() } else { a.clone() };
                (w.reversed(), c)
            })
            .collect();
        StarPolynomial { field: self.field, terms }
    }

    pub fn is_symmetric(&self) -> bool {
        self.involute() == *self
    }

    pub fn is_skew(&self) -> bool {
        self.involute() == self.negate()
    }

    pub fn commutator(&self, other: &StarPolynomial) -> Result<StarPolynomial> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// `[[f_1, f_2], .., f_n]`; needs at least two entries.
    pub fn left_normed_commutator(items: &[StarPolynomial]) -> Result<StarPolynomial> {
        assert!(items.len() >= 2, "a commutator needs at least two entries");
        let mut acc = items[0].commutator(&items[1])?;
        for f in &items[2..] {
            acc = acc.commutator(f)?;
        }
        Ok(acc)
    }

    /// `(f + f*)/2` and `(f - f*)/2`.
    pub fn sym_skew_split(&self) -> (StarPolynomial, StarPolynomial) {
        let half = FieldElement::from_i64(self.field, 2).inverse().expect("characteristic is not 2");
        let star = self.involute();
        let plus = (self + &star).scale(&half).expect("same field");
        let minus = (self - &star).scale(&half).expect("same field");
        (plus, minus)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|w| w.letters().iter().copied()).collect()
    }

    /// Highest degree of `v` over all terms.
    pub fn degree_in(&self, v: Variable) -> u32 {
        self.terms
            .keys()
            .map(|w| w.letters().iter().filter(|&&l| l == v).count() as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.multihomogeneous_components().len() <= 1
    }

    /// Terms grouped by multidegree; the components sum to `self`.
    pub fn multihomogeneous_components(&self) -> Vec<(MultiDegree, StarPolynomial)> {
        let mut parts: BTreeMap<MultiDegree, StarPolynomial> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts
                .entry(w.multi_degree())
                .or_insert_with(|| StarPolynomial::zero(self.field))
                .terms
                .insert(w.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// Applies the endomorphism sending each listed variable to its image;
    /// other variables are fixed. Images must keep the symmetry of the
    /// variable they replace.
    pub fn substitute(&self, sigma: &BTreeMap<Variable, StarPolynomial>) -> Result<StarPolynomial> {
        for (v, g) in sigma {
            self.check(g)?;
            let ok = if v.is_skew() { g.is_skew() } else { g.is_symmetric() };
            if !ok {
                return Err(Error::SymmetryViolation(*v));
            }
        }
        Ok(self.substitute_unchecked(sigma))
    }

    /// [`substitute`](Self::substitute) without the symmetry check.
    pub fn substitute_unchecked(&self, sigma: &BTreeMap<Variable, StarPolynomial>) -> StarPolynomial {
        let mut out = StarPolynomial::zero(self.field);
        for (w, c) in &self.terms {
            let mut acc = StarPolynomial::constant(c.clone());
            for v in w.letters() {
                match sigma.get(v) {
                    Some(g) => acc = &acc * g,
                    None => {
                        acc = StarPolynomial {
                            field: self.field,
                            terms: acc
                                .terms
                                .into_iter()
                                .map(|(u, a)| (u.concat(&Word::letter(*v)), a))
                                .collect(),
                        }
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            for (u, a) in acc.terms {
                out.add_term(u, &a);
            }
        }
        out
    }

    /// Terms in print order: total degree descending, term order ascending
    /// within a degree.
    pub fn print_order(&self) -> Vec<(&Word, &FieldElement)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }
}

impl fmt::Display for StarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.print_order().into_iter().enumerate() {
            let (negative, mag) = c.split_sign();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if mag.is_compound() { format!("({mag})") } else { mag.to_string() };
            if w.is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{coeff}*{w}")?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl ops::$tr<&StarPolynomial> for &StarPolynomial {
            type Output = StarPolynomial;
            fn $m(self, rhs: &StarPolynomial) -> StarPolynomial {
                self.$checked(rhs).expect("operands over the same field")
            }
        }
        impl ops::$tr<StarPolynomial> for StarPolynomial {
            type Output = StarPolynomial;
            fn $m(self, rhs: StarPolynomial) -> StarPolynomial {
                self.$checked(&rhs).expect("operands over the same field")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl ops::Neg for &StarPolynomial {
    type Output = StarPolynomial;
    fn neg(self) -> StarPolynomial {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(i: u32) -> StarPolynomial {
        StarPolynomial::var(Field::Rational, Variable::y(i))
    }

    fn z(i: u32) -> StarPolynomial {
        StarPolynomial::var(Field::Rational, Variable::z(i))
    }

    #[test]
    fn involution_signs() {
        let f = &(&y(1) * &z(1)) * &y(2);
        assert_eq!(f.involute(), -&(&(&y(2) * &z(1)) * &y(1)));
        let g = &z(1) * &z(2);
        assert_eq!(g.involute(), &z(2) * &z(1));
    }

    #[test]
    fn commutators() {
        assert!(y(1).commutator(&y(1)).unwrap().is_zero());
        let c = StarPolynomial::left_normed_commutator(&[z(1), y(1), y(2)]).unwrap();
        assert_eq!(c.len(), 4);
        let expected = &(&(&z(1) * &y(1)) - &(&y(1) * &z(1))) * &y(2)
            - &y(2) * &(&(&z(1) * &y(1)) - &(&y(1) * &z(1)));
        assert_eq!(c, expected);
    }

    #[test]
    fn sym_skew_split_example() {
        let f = &y(1) * &z(1);
        let (plus, minus) = f.sym_skew_split();
        let half = FieldElement::from_ratio(Field::Rational, &1.into(), &2.into()).unwrap();
        assert_eq!(plus, y(1).commutator(&z(1)).unwrap().scale(&half).unwrap());
        assert_eq!(minus, (&(&y(1) * &z(1)) + &(&z(1) * &y(1))).scale(&half).unwrap());
        assert_eq!(y(1).sym_skew_split(), (y(1), StarPolynomial::zero(Field::Rational)));
        assert_eq!(z(1).sym_skew_split(), (StarPolynomial::zero(Field::Rational), z(1)));
    }

    #[test]
    fn components() {
        let f = &(&y(1) * &z(1)) + &(&z(1) * &y(1));
        assert_eq!(f.multihomogeneous_components().len(), 1);
        let g = &y(1) + &(&y(1) * &y(1));
        assert_eq!(g.multihomogeneous_components().len(), 2);
    }

    #[test]
    fn substitution() {
        let c = y(1).commutator(&y(2)).unwrap();
        let sigma: BTreeMap<_, _> = [(Variable::y(1), y(2)), (Variable::y(2), y(1))].into();
        assert_eq!(c.substitute(&sigma).unwrap(), -&c);
        let g = &z(1) * &z(2);
        let sigma: BTreeMap<_, _> = [(Variable::z(1), z(1)), (Variable::z(2), z(1))].into();
        assert_eq!(g.substitute(&sigma).unwrap(), &z(1) * &z(1));
        let sigma: BTreeMap<_, _> = [(Variable::y(1), &y(1) * &z(1))].into();
        assert_eq!(y(1).substitute(&sigma), Err(Error::SymmetryViolation(Variable::y(1))));
    }

    #[test]
    fn field_mismatch() {
        let a = StarPolynomial::var(Field::Prime(3), Variable::y(1));
        assert!(matches!(a.checked_add(&y(1)), Err(Error::DescriptorMismatch { .. })));
    }

    #[test]
    fn printing() {
        let f3 = Field::Prime(3);
        let two = FieldElement::from_i64(f3, 2);
        let f = StarPolynomial::monomial(two.clone(), Word::letter(Variable::y(1)))
            .checked_add(&StarPolynomial::word(f3, Word::new(vec![Variable::z(1); 2])))
            .unwrap();
        assert_eq!(f.to_string(), "z1^2 - y1");
        assert_eq!(StarPolynomial::zero(f3).to_string(), "0");
        assert_eq!(StarPolynomial::constant(two).to_string(), "-1");
    }
}
