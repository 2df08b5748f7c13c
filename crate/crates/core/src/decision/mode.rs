use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// How identities and centrality are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvalMode {
    /// Every assignment over a finite field.
    FiniteExhaustive(Field),
    /// Generic matrices over the rationals.
    GenericChar0,
    /// Generic matrices with entries over `F_p`; models an infinite field
    /// of characteristic `p`.
    GenericCharP(u32),
}

impl EvalMode {
    /// `Q` always maps to [`EvalMode::GenericChar0`]; a finite field maps to
    /// exhaustive evaluation unless `generic` is set, which needs a prime field.
    pub fn for_field(field: Field, generic: bool) -> Result<EvalMode> {
        match (field, generic) {
            (Field::Rational, _) => Ok(EvalMode::GenericChar0),
            (Field::Prime(p), true) => Ok(EvalMode::GenericCharP(p)),
            (f, false) => Ok(EvalMode::FiniteExhaustive(f)),
            (f, true) => Err(Error::ModeFieldMismatch { mode: "generic".into(), field: f }),
        }
    }

    /// The coefficient field polynomials must live over.
    pub fn field(&self) -> Field {
        match *self {
            EvalMode::FiniteExhaustive(f) => f,
            EvalMode::GenericChar0 => Field::Rational,
            EvalMode::GenericCharP(p) => Field::Prime(p),
        }
    }

    pub fn is_generic(&self) -> bool {
        !matches!(self, EvalMode::FiniteExhaustive(_))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EvalMode::FiniteExhaustive(f) if !f.is_finite() => {
                Err(Error::ModeFieldMismatch { mode: self.to_string(), field: f })
            }
            EvalMode::GenericCharP(p) => Field::prime(p).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Fails unless polynomials over `field` can be decided in this mode.
    pub fn check_field(&self, field: Field) -> Result<()> {
        self.validate()?;
        if field == self.field() {
            Ok(())
        } else {
            Err(Error::ModeFieldMismatch { mode: self.to_string(), field })
        }
    }
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalMode::FiniteExhaustive(field) => write!(f, "exhaustive({field})"),
            EvalMode::GenericChar0 => write!(f, "generic(Q)"),
            EvalMode::GenericCharP(p) => write!(f, "generic(char {p})"),
        }
    }
}
