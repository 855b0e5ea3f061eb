//! Fuzzy desirability measures over propositional worlds and the
//! preference and similarity relations they induce.
//!
//! A [`DesirabilityMeasure`] assigns every world a degree in `[0, 1]`. Taking
//! the conorm pseudoinverse of two degrees gives a [`PreferenceRelation`];
//! negating and symmetrising that gives a [`SimilarityRelation`]. Interval
//! versions of each carry sound lower and upper bounds when desirability is
//! only partially known.

mod desirability;
mod envelope;
mod error;
mod matrix;
mod norm;
mod preference;
mod report;
mod similarity;
mod worlds;

#[cfg(feature = "sampling")]
pub mod sampling;

pub use desirability::{DesirabilityInterval, DesirabilityMeasure};
pub use envelope::transitive_envelope;
pub use error::{Error, Result};
pub use matrix::PairMatrix;
pub use norm::{
    verify_connectives, verify_profile, Connectives, ConormFamily, Grid, NegationFamily, NormProfile, TNormFamily,
    TOLERANCE,
};
pub use preference::{
    Combination, Combined, GeneratingFamily, GeneratorSearch, PreferenceInterval, PreferenceRelation,
};
pub use report::{AxiomCheck, AxiomReport, Witness};
pub use similarity::{
    interval_resemblance, relation_resemblance, resemblance_bounds, similarity_bounds, PreferenceBounds,
    ResemblanceBounds, SimilarityRelation, TransitivityDirection, TRANSITIVITY_DIRECTION,
};
pub use worlds::{eval_formula, is_partition, Formula, Proposition, Universe, World, MAX_ENUMERATED_ATOMS};
