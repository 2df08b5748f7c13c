//! The free unitary algebra `F<Y ∪ Z>` with its canonical involution.

mod parse;
mod poly;
mod word;

pub use poly::StarPolynomial;
pub use word::{MultiDegree, VarKind, Variable, Word};
