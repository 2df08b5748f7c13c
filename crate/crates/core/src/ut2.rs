//! 2x2 upper triangular matrices over a commutative ring, the involutions
//! `⋆` and `s`, and evaluation of polynomials at matrix assignments.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::commpoly::{CommPolynomial, CommVar};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::freealg::{StarPolynomial, VarKind, Variable};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionKind {
    /// `(a, c; 0, b) -> (b, c; 0, a)`
    Star,
    /// `(a, c; 0, b) -> (b, -c; 0, a)`
    S,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionKind::Star => write!(f, "star"),
            InvolutionKind::S => write!(f, "s"),
        }
    }
}

impl FromStr for InvolutionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<InvolutionKind> {
        match s {
            "star" | "⋆" => Ok(InvolutionKind::Star),
            "s" => Ok(InvolutionKind::S),
            _ => Err(Error::UnknownInvolution(s.to_string())),
        }
    }
}

/// `(e11, e12; 0, e22)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UT2Matrix<R> {
    pub e11: R,
    pub e12: R,
    pub e22: R,
}

impl<R: Ring> UT2Matrix<R> {
    pub fn new(e11: R, e12: R, e22: R) -> UT2Matrix<R> {
        UT2Matrix { e11, e12, e22 }
    }

    pub fn zero(proto: &R) -> UT2Matrix<R> {
        let z = proto.zero_like();
        UT2Matrix { e11: z.clone(), e12: z.clone(), e22: z }
    }

    pub fn identity(proto: &R) -> UT2Matrix<R> {
        UT2Matrix { e11: proto.one_like(), e12: proto.zero_like(), e22: proto.one_like() }
    }

    pub fn add(&self, o: &UT2Matrix<R>) -> UT2Matrix<R> {
        UT2Matrix { e11: self.e11.add(&o.e11), e12: self.e12.add(&o.e12), e22: self.e22.add(&o.e22) }
    }

    pub fn sub(&self, o: &UT2Matrix<R>) -> UT2Matrix<R> {
        UT2Matrix { e11: self.e11.sub(&o.e11), e12: self.e12.sub(&o.e12), e22: self.e22.sub(&o.e22) }
    }

    pub fn mul(&self, o: &UT2Matrix<R>) -> UT2Matrix<R> {
        UT2Matrix {
            e11: self.e11.mul(&o.e11),
            e12: self.e11.mul(&o.e12).add(&self.e12.mul(&o.e22)),
            e22: self.e22.mul(&o.e22),
        }
    }

    pub fn scale(&self, c: &R) -> UT2Matrix<R> {
        UT2Matrix { e11: self.e11.mul(c), e12: self.e12.mul(c), e22: self.e22.mul(c) }
    }

    pub fn neg(&self) -> UT2Matrix<R> {
        UT2Matrix { e11: self.e11.neg(), e12: self.e12.neg(), e22: self.e22.neg() }
    }

    pub fn involve(&self, kind: InvolutionKind) -> UT2Matrix<R> {
        let e12 = match kind {
            InvolutionKind::Star => self.e12.clone(),
            InvolutionKind::S => self.e12.neg(),
        };
        UT2Matrix { e11: self.e22.clone(), e12, e22: self.e11.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.e11.is_zero() && self.e12.is_zero() && self.e22.is_zero()
    }

    /// Scalar matrix test: the center of UT2 is the scalars.
    pub fn is_central(&self) -> bool {
        self.e12.is_zero() && self.e11 == self.e22
    }

    pub fn is_symmetric(&self, kind: InvolutionKind) -> bool {
        self.involve(kind) == *self
    }

    pub fn is_skew(&self, kind: InvolutionKind) -> bool {
        self.involve(kind) == self.neg()
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> UT2Matrix<S> {
        UT2Matrix { e11: f(&self.e11), e12: f(&self.e12), e22: f(&self.e22) }
    }
}

impl<R: fmt::Display> fmt::Display for UT2Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}; 0, {}]", self.e11, self.e12, self.e22)
    }
}

fn scalar_matrix(field: Field, e11: i64, e12: i64, e22: i64) -> UT2Matrix<FieldElement> {
    UT2Matrix {
        e11: FieldElement::from_i64(field, e11),
        e12: FieldElement::from_i64(field, e12),
        e22: FieldElement::from_i64(field, e22),
    }
}

/// Basis of the symmetric elements: `[I, e12]` for `⋆`, `[I]` for `s`.
pub fn symmetric_basis(kind: InvolutionKind, field: Field) -> Vec<UT2Matrix<FieldElement>> {
    match kind {
        InvolutionKind::Star => vec![scalar_matrix(field, 1, 0, 1), scalar_matrix(field, 0, 1, 0)],
        InvolutionKind::S => vec![scalar_matrix(field, 1, 0, 1)],
    }
}

/// Basis of the skew elements: `[e11 - e22]` for `⋆`, `[e11 - e22, e12]` for `s`.
pub fn skew_basis(kind: InvolutionKind, field: Field) -> Vec<UT2Matrix<FieldElement>> {
    match kind {
        InvolutionKind::Star => vec![scalar_matrix(field, 1, 0, -1)],
        InvolutionKind::S => vec![scalar_matrix(field, 1, 0, -1), scalar_matrix(field, 0, 1, 0)],
    }
}

/// Number of coordinates a variable takes over the basis of its eigenspace.
pub fn coordinate_count(kind: InvolutionKind, v: Variable) -> usize {
    match (kind, v.kind) {
        (InvolutionKind::Star, VarKind::Y) | (InvolutionKind::S, VarKind::Z) => 2,
        _ => 1,
    }
}

/// The indeterminates parametrizing `v`, in coordinate order:
/// `⋆`: `y_i -> a_i I + b_i e12`, `z_i -> c_i (e11 - e22)`;
/// `s`: `y_i -> a_i I`, `z_i -> b_i (e11 - e22) + c_i e12`.
pub fn coordinate_vars(kind: InvolutionKind, v: Variable) -> Vec<CommVar> {
    let i = v.index;
    match (kind, v.kind) {
        (InvolutionKind::Star, VarKind::Y) => vec![CommVar::a(i), CommVar::b(i)],
        (InvolutionKind::Star, VarKind::Z) => vec![CommVar::c(i)],
        (InvolutionKind::S, VarKind::Y) => vec![CommVar::a(i)],
        (InvolutionKind::S, VarKind::Z) => vec![CommVar::b(i), CommVar::c(i)],
    }
}

/// Builds the matrix of `v` from its coordinates (see [`coordinate_vars`]).
pub fn matrix_from_coordinates<R: Ring>(kind: InvolutionKind, v: Variable, coords: &[R]) -> UT2Matrix<R> {
    let zero = coords[0].zero_like();
    match (kind, v.kind) {
        (InvolutionKind::Star, VarKind::Y) => UT2Matrix::new(coords[0].clone(), coords[1].clone(), coords[0].clone()),
        (InvolutionKind::Star, VarKind::Z) => UT2Matrix::new(coords[0].clone(), zero, coords[0].neg()),
        (InvolutionKind::S, VarKind::Y) => UT2Matrix::new(coords[0].clone(), zero, coords[0].clone()),
        (InvolutionKind::S, VarKind::Z) => UT2Matrix::new(coords[0].clone(), coords[1].clone(), coords[0].neg()),
    }
}

/// Images of the variables under a symmetry-respecting substitution.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment<R> {
    kind: InvolutionKind,
    one: R,
    values: BTreeMap<Variable, UT2Matrix<R>>,
}

impl<R: Ring> Assignment<R> {
    /// `one` fixes the coefficient ring.
    pub fn new(kind: InvolutionKind, one: R) -> Assignment<R> {
        Assignment { kind, one, values: BTreeMap::new() }
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn set(&mut self, v: Variable, m: UT2Matrix<R>) -> Result<()> {
        let ok = if v.is_skew() { m.is_skew(self.kind) } else { m.is_symmetric(self.kind) };
        if !ok {
            return Err(Error::SymmetryViolation(v));
        }
        self.values.insert(v, m);
        Ok(())
    }

    pub fn get(&self, v: Variable) -> Option<&UT2Matrix<R>> {
        self.values.get(&v)
    }

    pub fn values(&self) -> &BTreeMap<Variable, UT2Matrix<R>> {
        &self.values
    }
}

impl<R: fmt::Display> fmt::Display for Assignment<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(v, m)| format!("{v} = {m}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Evaluates `f` at `a`; the empty word maps to the identity.
pub fn evaluate<R: Ring>(f: &StarPolynomial, a: &Assignment<R>) -> Result<UT2Matrix<R>> {
    if f.field() != a.one.field() {
        return Err(Error::DescriptorMismatch { left: f.field(), right: a.one.field() });
    }
    let mut acc = UT2Matrix::zero(&a.one);
    for (w, c) in f.terms() {
        let mut m = UT2Matrix::identity(&a.one);
        for v in w.letters() {
            let x = a.values.get(v).ok_or_else(|| Error::MissingAssignment(v.to_string()))?;
            m = m.mul(x);
        }
        acc = acc.add(&m.scale(&a.one.scalar_like(c)));
    }
    Ok(acc)
}

/// Assignment of fresh indeterminates to the given variables.
pub fn generic_assignment_for(
    vars: impl IntoIterator<Item = Variable>,
    kind: InvolutionKind,
    field: Field,
) -> Assignment<CommPolynomial> {
    let one = CommPolynomial::constant(FieldElement::one(field));
    let mut a = Assignment::new(kind, one);
    for v in vars {
        let coords: Vec<CommPolynomial> =
            coordinate_vars(kind, v).into_iter().map(|x| CommPolynomial::var(field, x)).collect();
        a.values.insert(v, matrix_from_coordinates(kind, v, &coords));
    }
    a
}

/// Generic assignment for every variable of `f`.
pub fn generic_assignment(f: &StarPolynomial, kind: InvolutionKind) -> Assignment<CommPolynomial> {
    generic_assignment_for(f.variables(), kind, f.field())
}

/// All assignments of a finite field to the given variables, ordered as an
/// odometer over the coordinates (last coordinate fastest, zero first).
#[derive(Clone, Debug)]
pub struct ExhaustiveAssignments {
    kind: InvolutionKind,
    field: Field,
    vars: Vec<Variable>,
    coords: Vec<CommVar>,
    elements: Vec<FieldElement>,
}

impl ExhaustiveAssignments {
    pub fn new(vars: impl IntoIterator<Item = Variable>, kind: InvolutionKind, field: Field) -> Result<ExhaustiveAssignments> {
        let elements = field.enumerate()?;
        let mut vars: Vec<Variable> = vars.into_iter().collect();
        vars.sort();
        vars.dedup();
        let coords = vars.iter().flat_map(|&v| coordinate_vars(kind, v)).collect();
        Ok(ExhaustiveAssignments { kind, field, vars, coords, elements })
    }

    pub fn for_polynomial(f: &StarPolynomial, kind: InvolutionKind) -> Result<ExhaustiveAssignments> {
        ExhaustiveAssignments::new(f.variables(), kind, f.field())
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn coordinates(&self) -> &[CommVar] {
        &self.coords
    }

    /// `q^(number of coordinates)`, saturating.
    pub fn len(&self) -> u64 {
        (self.elements.len() as u64).saturating_pow(self.coords.len() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Residue index of every coordinate of the `i`-th assignment.
    pub fn digits(&self, mut i: u64) -> Vec<usize> {
        let q = self.elements.len() as u64;
        let mut d = vec![0usize; self.coords.len()];
        for slot in d.iter_mut().rev() {
            *slot = (i % q) as usize;
            i /= q;
        }
        d
    }

    pub fn point(&self, i: u64) -> BTreeMap<CommVar, FieldElement> {
        self.coords
            .iter()
            .zip(self.digits(i))
            .map(|(&c, d)| (c, self.elements[d].clone()))
            .collect()
    }

    pub fn get(&self, i: u64) -> Assignment<FieldElement> {
        let digits = self.digits(i);
        let mut a = Assignment::new(self.kind, FieldElement::one(self.field));
        let mut at = 0;
        for &v in &self.vars {
            let n = coordinate_count(self.kind, v);
            let coords: Vec<FieldElement> = digits[at..at + n].iter().map(|&d| self.elements[d].clone()).collect();
            at += n;
            a.values.insert(v, matrix_from_coordinates(self.kind, v, &coords));
        }
        a
    }

    pub fn iter(&self) -> impl Iterator<Item = Assignment<FieldElement>> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

/// `Y^i` for `Y = (a, b; 0, a)`: `(a^i, i a^(i-1) b; 0, a^i)`, `i >= 1`.
pub fn power_formula<R: Ring>(a: &R, b: &R, i: u32) -> UT2Matrix<R> {
    assert!(i >= 1, "power formula needs i >= 1");
    let pow = |x: &R, e: u32| (0..e).fold(x.one_like(), |acc, _| acc.mul(x));
    let ai = pow(a, i);
    let coeff = a.scalar_like(&FieldElement::from_i64(a.field(), i as i64));
    let corner = coeff.mul(&pow(a, i - 1)).mul(b);
    UT2Matrix::new(ai.clone(), corner, ai)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(field: Field, n: i64) -> FieldElement {
        FieldElement::from_i64(field, n)
    }

    #[test]
    fn involutions_on_units() {
        let q = Field::Rational;
        let e11 = scalar_matrix(q, 1, 0, 0);
        assert_eq!(e11.involve(InvolutionKind::Star), scalar_matrix(q, 0, 0, 1));
        let e12 = scalar_matrix(q, 0, 1, 0);
        assert_eq!(e12.involve(InvolutionKind::S), scalar_matrix(q, 0, -1, 0));
    }

    #[test]
    fn bases() {
        let q = Field::Rational;
        for kind in [InvolutionKind::Star, InvolutionKind::S] {
            let sym = symmetric_basis(kind, q);
            let skew = skew_basis(kind, q);
            assert_eq!(sym.len() + skew.len(), 3);
            assert!(sym.iter().all(|m| m.is_symmetric(kind)));
            assert!(skew.iter().all(|m| m.is_skew(kind)));
        }
        assert_eq!(symmetric_basis(InvolutionKind::Star, q).len(), 2);
        assert_eq!(skew_basis(InvolutionKind::S, q).len(), 2);
    }

    #[test]
    fn centrality() {
        let q = Field::Rational;
        assert!(scalar_matrix(q, 3, 0, 3).is_central());
        assert!(!scalar_matrix(q, 0, 1, 0).is_central());
        assert!(!scalar_matrix(q, 1, 0, 0).is_central());
    }

    #[test]
    fn evaluation_examples() {
        let q = Field::Rational;
        let f = StarPolynomial::parse("[z1,y1]", q).unwrap();
        let mut a = Assignment::new(InvolutionKind::Star, FieldElement::one(q));
        a.set(Variable::z(1), scalar_matrix(q, 1, 0, -1)).unwrap();
        a.set(Variable::y(1), scalar_matrix(q, 0, 1, 0)).unwrap();
        assert_eq!(evaluate(&f, &a).unwrap(), scalar_matrix(q, 0, 2, 0));
        assert!(a.set(Variable::y(2), scalar_matrix(q, 1, 0, -1)).is_err());
        let g = StarPolynomial::parse("y3", q).unwrap();
        assert_eq!(evaluate(&g, &a), Err(Error::MissingAssignment("y3".into())));
    }

    #[test]
    fn generic_shapes() {
        let q = Field::Rational;
        let a = generic_assignment(&StarPolynomial::parse("y1", q).unwrap(), InvolutionKind::Star);
        assert_eq!(a.get(Variable::y(1)).unwrap().to_string(), "[a1, b1; 0, a1]");
        let a = generic_assignment(&StarPolynomial::parse("z1", q).unwrap(), InvolutionKind::Star);
        assert_eq!(a.get(Variable::z(1)).unwrap().to_string(), "[c1, 0; 0, -c1]");
        let a = generic_assignment(&StarPolynomial::parse("z1", q).unwrap(), InvolutionKind::S);
        assert_eq!(a.get(Variable::z(1)).unwrap().to_string(), "[b1, c1; 0, -b1]");
    }

    #[test]
    fn assignment_counts() {
        let f3 = Field::Prime(3);
        let f = StarPolynomial::parse("y1*z1", f3).unwrap();
        assert_eq!(ExhaustiveAssignments::for_polynomial(&f, InvolutionKind::Star).unwrap().len(), 27);
        let g = StarPolynomial::parse("z1", f3).unwrap();
        assert_eq!(ExhaustiveAssignments::for_polynomial(&g, InvolutionKind::S).unwrap().len(), 9);
        let c = StarPolynomial::parse("2", f3).unwrap();
        let all = ExhaustiveAssignments::for_polynomial(&c, InvolutionKind::S).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all.get(0).values().is_empty());
        let r = StarPolynomial::parse("y1", Field::Rational).unwrap();
        assert!(ExhaustiveAssignments::for_polynomial(&r, InvolutionKind::S).is_err());
    }

    #[test]
    fn odometer_order() {
        let f3 = Field::Prime(3);
        let all = ExhaustiveAssignments::new([Variable::y(1)], InvolutionKind::Star, f3).unwrap();
        assert!(all.get(0).get(Variable::y(1)).unwrap().is_zero());
        assert_eq!(all.get(1).get(Variable::y(1)).unwrap(), &scalar_matrix(f3, 0, 1, 0));
        assert_eq!(all.get(3).get(Variable::y(1)).unwrap(), &scalar_matrix(f3, 1, 0, 1));
    }

    #[test]
    fn power_formula_examples() {
        let q = Field::Rational;
        assert_eq!(power_formula(&el(q, 1), &el(q, 1), 2), scalar_matrix(q, 1, 2, 1));
        let f3 = Field::Prime(3);
        for a in f3.enumerate().unwrap() {
            for b in f3.enumerate().unwrap() {
                let m = power_formula(&a, &b, 3);
                assert_eq!(m, UT2Matrix::new(a.clone(), el(f3, 0), a.clone()));
            }
        }
    }

    #[test]
    fn even_z_product_is_scalar() {
        let q = Field::Rational;
        let f = StarPolynomial::parse("z1*z2", q).unwrap();
        let mut a = Assignment::new(InvolutionKind::Star, FieldElement::one(q));
        a.set(Variable::z(1), scalar_matrix(q, 2, 0, -2)).unwrap();
        a.set(Variable::z(2), scalar_matrix(q, 5, 0, -5)).unwrap();
        assert_eq!(evaluate(&f, &a).unwrap(), scalar_matrix(q, 10, 0, 10));
    }
}
