//! Identity and centrality decisions, consequence generation and slice
//! linear algebra.

pub mod consequences;
pub mod eval;
pub mod identity;
pub mod linalg;
pub mod mode;
pub mod report;
pub mod slice;

pub use consequences::{
    consequences_in_slice, t_ideal_consequences_in_bound, t_ideal_forms, t_space_consequences_in_bound,
    CoefficientSet, ConsequenceStrategy, SliceConsequences, Universe,
};
pub use identity::{
    equal_mod_identities, generic_value, in_identities_plus_scalars, is_central_poly, is_identity, Verdict, Witness,
};
pub use linalg::SpanBasis;
pub use mode::EvalMode;
pub use report::{Check, Dims, Status, VerificationReport};
pub use slice::{
    central_space_of_slice, check_complement, identity_space_of_slice, membership, quotient_coordinates,
    ComplementCheck, Slice,
};
