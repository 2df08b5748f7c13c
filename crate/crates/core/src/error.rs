use thiserror::Error;

use crate::field::Field;
use crate::freealg::Variable;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    DescriptorMismatch { left: Field, right: Field },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a finite field")]
    InfiniteField(Field),

    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at offset {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("value for {0} does not have the required symmetry")]
    SymmetryViolation(Variable),

    #[error("no value assigned to {0}")]
    MissingAssignment(String),

    #[error("mode {mode} cannot be used with field {field}")]
    ModeFieldMismatch { mode: String, field: Field },

    #[error("degree bound {bound} is below the generator degree {needed}")]
    BoundTooSmall { bound: usize, needed: usize },

    #[error("polynomial does not live in the basis universe: {0}")]
    UniverseMismatch(String),

    #[error(
        "basis does not complement the identities: slice dim {slice_dim}, identity dim {identity_dim}, \
         {basis_count} basis elements, combined rank {combined_rank}"
    )]
    BasisNotComplementary {
        slice_dim: usize,
        identity_dim: usize,
        basis_count: usize,
        combined_rank: usize,
    },

    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),

    #[error("q = {q} is not a power of p = {p}")]
    InconsistentPQ { p: u32, q: u64 },

    #[error("unknown involution `{0}`")]
    UnknownInvolution(String),

    #[error("invalid consequence strategy: {0}")]
    InvalidStrategy(String),

    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),

    #[error("{theorem} is not stated for {regime}")]
    RegimeMismatch { theorem: String, regime: String },
}
