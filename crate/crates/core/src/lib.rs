//! Polynomial identities and central polynomials with involution for the
//! algebra of 2x2 upper triangular matrices.

pub mod catalog;
pub mod commpoly;
pub mod decision;
pub mod error;
pub mod field;
pub mod freealg;
pub mod ring;
pub mod ut2;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use freealg::{MultiDegree, StarPolynomial, VarKind, Variable, Word};
pub use ring::Ring;
pub use ut2::{InvolutionKind, UT2Matrix};
