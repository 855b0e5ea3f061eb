use thiserror::Error;

use crate::report::AxiomReport;

/// Errors raised by the core algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value {value} is outside the unit interval")]
    OutOfRange { value: f64 },

    #[error("operands are defined over different universes")]
    UniverseMismatch,

    #[error("operands use different conorms ({left} vs {right})")]
    ConormMismatch { left: String, right: String },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("world {world} does not assign atom `{atom}`")]
    MissingAtom { world: usize, atom: String },

    #[error("cannot enumerate {atoms} atoms (limit is {limit})")]
    TooManyAtoms { atoms: usize, limit: usize },

    #[error("world id {0} is not in the universe")]
    UnknownWorld(usize),

    #[error("proposition is empty")]
    EmptyProposition,

    #[error("propositions do not partition the universe")]
    NotAPartition,

    #[error("lower bound {lower} exceeds upper bound {upper} at index {index}")]
    BoundOrder { index: usize, lower: f64, upper: f64 },

    #[error("relation violates its axioms: {0}")]
    AxiomViolation(Box<AxiomReport>),

    #[error("generating family is empty")]
    EmptyFamily,

    #[error("diagonal entry ({0},{0}) is not zero")]
    NonzeroDiagonal(usize),

    #[error("grid denominator must be positive")]
    InvalidGrid,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_unit(value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange { value })
    }
}
