use std::fmt;

use crate::field::{Field, FieldElement};

/// Commutative coefficient ring for matrix entries.
///
/// Implemented by [`FieldElement`] (concrete evaluation) and
/// [`crate::commpoly::CommPolynomial`] (generic evaluation). Operands built
/// over different fields are a programming error and panic; the checked
/// variants live on the concrete types.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn field(&self) -> Field;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Embeds a scalar of the same field.
    fn scalar_like(&self, c: &FieldElement) -> Self;
}
