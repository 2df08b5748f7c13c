//! Exact scalars: the rationals, prime fields `F_p` and the small extension
//! fields `F_9`, `F_25`, `F_27`, `F_49`.
//!
//! Finite field elements are stored as a single residue. For an extension of
//! degree `k` the residue encodes the coefficient vector `(c_0, .., c_{k-1})`
//! of `c_0 + c_1 t + .. + c_{k-1} t^{k-1}` in base `p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;

const MAX_EXTENSION_DEGREE: usize = 3;

/// Moduli for the embedded extension fields, as `(p, k, [m_0, .., m_{k-1}])`
/// for the monic polynomial `t^k + m_{k-1} t^{k-1} + .. + m_0`.
const EXTENSION_TABLE: [(u32, u32, [u32; MAX_EXTENSION_DEGREE]); 4] = [
    (3, 2, [1, 0, 0]), // F9:  t^2 + 1
    (5, 2, [2, 0, 0]), // F25: t^2 + 2
    (3, 3, [1, 2, 0]), // F27: t^3 + 2t + 1
    (7, 2, [1, 0, 0]), // F49: t^2 + 1
];

/// A field descriptor. Cheap to copy; characteristic 2 cannot be built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
    Extension {
        p: u32,
        k: u32,
        modulus: [u32; MAX_EXTENSION_DEGREE],
    },
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) || p > u16::MAX as u32 {
            return Err(Error::InvalidField(format!("{p} is not a supported odd prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Builds `F_p[t]/(modulus)` where `modulus` lists the low coefficients
    /// of a monic polynomial of degree `modulus.len()`.
    pub fn extension(p: u32, modulus: &[u32]) -> Result<Field> {
        Field::prime(p)?;
        let k = modulus.len();
        if !(2..=MAX_EXTENSION_DEGREE).contains(&k) {
            return Err(Error::InvalidField(format!(
                "extension degree {k} is not supported"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must be reduced".into()));
        }
        // Degree 2 and 3: irreducible iff there is no root.
        let has_root = (0..p).any(|x| {
            let mut acc = 1u64;
            for &c in modulus.iter().rev() {
                acc = (acc * x as u64 + c as u64) % p as u64;
            }
            acc == 0
        });
        if has_root {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F{p}"
            )));
        }
        let mut m = [0u32; MAX_EXTENSION_DEGREE];
        m[..k].copy_from_slice(modulus);
        Ok(Field::Extension { p, k: k as u32, modulus: m })
    }

    /// Parses the names used on the command line: `Q`, `F<p>`, `F9`, `F25`, `F27`, `F49`.
    pub fn from_name(name: &str) -> Result<Field> {
        let name = name.trim();
        if name == "Q" {
            return Ok(Field::Rational);
        }
        let q: u64 = name
            .strip_prefix('F')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::InvalidField(name.to_string()))?;
        if q.is_power_of_two() {
            return Err(Error::CharacteristicTwo);
        }
        if q <= u32::MAX as u64 && is_prime(q as u32) {
            return Field::prime(q as u32);
        }
        for (p, k, m) in EXTENSION_TABLE {
            if (p as u64).pow(k) == q {
                return Field::extension(p, &m[..k as usize]);
            }
        }
        Err(Error::InvalidField(format!("no embedded field of order {q}")))
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Field::Rational)
    }

    /// `0` for the rationals.
    pub fn characteristic(&self) -> u32 {
        match *self {
            Field::Rational => 0,
            Field::Prime(p) | Field::Extension { p, .. } => p,
        }
    }

    /// `None` stands for an infinite field.
    pub fn cardinality(&self) -> Option<u64> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) => Some(p as u64),
            Field::Extension { p, k, .. } => Some((p as u64).pow(k)),
        }
    }

    /// The prime subfield.
    pub fn prime_field(&self) -> Field {
        match *self {
            Field::Rational => Field::Rational,
            Field::Prime(p) | Field::Extension { p, .. } => Field::Prime(p),
        }
    }

    /// All elements in residue order (coefficient vectors compared from the
    /// highest power of `t` down).
    pub fn enumerate(&self) -> Result<Vec<FieldElement>> {
        let q = self.cardinality().ok_or(Error::InfiniteField(*self))?;
        Ok((0..q as u32)
            .map(|r| FieldElement { field: *self, value: Value::Residue(r) })
            .collect())
    }

    fn digits(&self, r: u32) -> [u32; MAX_EXTENSION_DEGREE] {
        let (p, k) = match *self {
            Field::Extension { p, k, .. } => (p, k as usize),
            _ => unreachable!("digits of a non-extension element"),
        };
        let mut out = [0u32; MAX_EXTENSION_DEGREE];
        let mut r = r;
        for d in out.iter_mut().take(k) {
            *d = r % p;
            r /= p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        let p = self.characteristic();
        digits.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn add_residue(&self, a: u32, b: u32) -> u32 {
        match *self {
            Field::Prime(p) => (a + b) % p,
            Field::Extension { p, k, .. } => {
                let (x, y) = (self.digits(a), self.digits(b));
                let s: Vec<u32> = (0..k as usize).map(|i| (x[i] + y[i]) % p).collect();
                self.undigits(&s)
            }
            Field::Rational => unreachable!(),
        }
    }

    fn neg_residue(&self, a: u32) -> u32 {
        match *self {
            Field::Prime(p) => (p - a) % p,
            Field::Extension { p, k, .. } => {
                let x = self.digits(a);
                let s: Vec<u32> = (0..k as usize).map(|i| (p - x[i]) % p).collect();
                self.undigits(&s)
            }
            Field::Rational => unreachable!(),
        }
    }

    fn mul_residue(&self, a: u32, b: u32) -> u32 {
        match *self {
            Field::Prime(p) => ((a as u64 * b as u64) % p as u64) as u32,
            Field::Extension { p, k, modulus } => {
                let k = k as usize;
                let p64 = p as u64;
                let (x, y) = (self.digits(a), self.digits(b));
                let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE - 1];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p64;
                    }
                }
                // t^k = -(m_0 + m_1 t + ..)
                for d in (k..2 * k - 1).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for (i, &m) in modulus.iter().enumerate().take(k) {
                        let idx = d - k + i;
                        prod[idx] = (prod[idx] + (p64 - c) * m as u64) % p64;
                    }
                }
                let s: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
                self.undigits(&s)
            }
            Field::Rational => unreachable!(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cardinality() {
            None => write!(f, "Q"),
            Some(q) => write!(f, "F{q}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        Field::from_name(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Rational(BigRational),
    Residue(u32),
}

/// An element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl FieldElement {
    pub fn zero(field: Field) -> FieldElement {
        FieldElement::from_i64(field, 0)
    }

    pub fn one(field: Field) -> FieldElement {
        FieldElement::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> FieldElement {
        FieldElement::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> FieldElement {
        let value = match field {
            Field::Rational => Value::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) | Field::Extension { p, .. } => {
                let p = BigInt::from(p);
                let r = ((n % &p) + &p) % &p;
                Value::Residue(r.to_u32().expect("residue fits"))
            }
        };
        FieldElement { field, value }
    }

    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        FieldElement::from_bigint(field, num).checked_div(&FieldElement::from_bigint(field, den))
    }

    pub fn from_rational(r: BigRational) -> FieldElement {
        FieldElement { field: Field::Rational, value: Value::Rational(r) }
    }

    /// Builds `c_0 + c_1 t + ..` in an extension field (or a prime field when
    /// only `c_0` is given).
    pub fn from_coefficients(field: Field, coefficients: &[u32]) -> Result<FieldElement> {
        let (p, k) = match field {
            Field::Rational => return Err(Error::InfiniteField(field)),
            Field::Prime(p) => (p, 1),
            Field::Extension { p, k, .. } => (p, k as usize),
        };
        if coefficients.len() > k {
            return Err(Error::InvalidField(format!("{field} has degree {k} over F{p}")));
        }
        let digits: Vec<u32> = coefficients.iter().map(|c| c % p).collect();
        let r = digits.iter().rev().fold(0, |acc, &d| acc * p + d);
        Ok(FieldElement { field, value: Value::Residue(r) })
    }

    /// The class of `t` in an extension field.
    pub fn generator(field: Field) -> Result<FieldElement> {
        match field {
            Field::Extension { .. } => FieldElement::from_coefficients(field, &[0, 1]),
            _ => Err(Error::InvalidField(format!("{field} has no extension generator"))),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_one(),
            Value::Residue(r) => *r == 1,
        }
    }

    /// Residue index for finite fields (its position in [`Field::enumerate`]).
    pub fn residue(&self) -> Option<u32> {
        match self.value {
            Value::Residue(r) => Some(r),
            Value::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r),
            Value::Residue(_) => None,
        }
    }

    /// Coefficient vector over the prime field (length 1 for prime fields).
    pub fn coefficients(&self) -> Option<Vec<u32>> {
        match (self.field, &self.value) {
            (Field::Prime(_), Value::Residue(r)) => Some(vec![*r]),
            (Field::Extension { k, .. }, Value::Residue(r)) => {
                Some(self.field.digits(*r)[..k as usize].to_vec())
            }
            _ => None,
        }
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch { left: self.field, right: other.field })
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Residue(a), Value::Residue(b)) => Value::Residue(self.field.add_residue(*a, *b)),
            _ => unreachable!(),
        };
        Ok(FieldElement { field: self.field, value })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_add(&other.negate())
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Residue(a), Value::Residue(b)) => Value::Residue(self.field.mul_residue(*a, *b)),
            _ => unreachable!(),
        };
        Ok(FieldElement { field: self.field, value })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn negate(&self) -> FieldElement {
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(-a),
            Value::Residue(a) => Value::Residue(self.field.neg_residue(*a)),
        };
        FieldElement { field: self.field, value }
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.value {
            Value::Rational(a) => Ok(FieldElement::from_rational(a.recip())),
            Value::Residue(_) => {
                let q = self.field.cardinality().expect("finite");
                Ok(self.pow(q - 2))
            }
        }
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            base = Ring::mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Splits off a sign for printing: rationals by sign, prime-field
    /// residues above `p/2` as negatives, and likewise for extension
    /// elements that lie in the prime subfield.
    pub fn split_sign(&self) -> (bool, FieldElement) {
        match &self.value {
            Value::Rational(r) => (r.is_negative(), FieldElement::from_rational(r.abs())),
            Value::Residue(r) => {
                let p = self.field.characteristic();
                if *r < p && *r > p / 2 {
                    (true, self.negate())
                } else {
                    (false, self.clone())
                }
            }
        }
    }

    /// True when the printed form needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        match self.value {
            Value::Residue(r) => matches!(self.field, Field::Extension { .. }) && r >= self.field.characteristic(),
            Value::Rational(_) => false,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.value, self.field) {
            (Value::Rational(r), _) => write!(f, "{r}"),
            (Value::Residue(r), Field::Prime(_)) => write!(f, "{r}"),
            (Value::Residue(r), field) => {
                let digits = field.digits(*r);
                let mut parts = Vec::new();
                for (i, &c) in digits.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    parts.push(match (i, c) {
                        (0, c) => format!("{c}"),
                        (1, 1) => "t".to_string(),
                        (1, c) => format!("{c}*t"),
                        (i, 1) => format!("t^{i}"),
                        (i, c) => format!("{c}*t^{i}"),
                    });
                }
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
        }
    }
}

impl Ring for FieldElement {
    fn field(&self) -> Field {
        self.field
    }

    fn zero_like(&self) -> Self {
        FieldElement::zero(self.field)
    }

    fn one_like(&self) -> Self {
        FieldElement::one(self.field)
    }

    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
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
        self.negate()
    }

    fn scalar_like(&self, c: &FieldElement) -> Self {
        assert_eq!(self.field, c.field, "scalar over a different field");
        c.clone()
    }
}
