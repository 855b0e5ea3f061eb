//! Desirability measures and their necessity/possibility enclosures.
//!
//! A [`DesirabilityMeasure`] grades every world of a universe in `[0, 1]`. The
//! connectives lift pointwise through a [`NormProfile`]. A
//! [`DesirabilityInterval`] pairs a necessary (lower) and a possible (upper)
//! measure; its connectives propagate enclosures so that any exact measures
//! inside the operands combine to a measure inside the result.

use crate::error::{check_unit, Error, Result};
use crate::norm::{leq, NormProfile};
use crate::worlds::{is_partition, Proposition, Universe};

#[derive(Debug, Clone, PartialEq)]
pub struct DesirabilityMeasure {
    universe: Universe,
    values: Vec<f64>,
}

impl DesirabilityMeasure {
    /// `values` are indexed by world id.
    pub fn new(universe: &Universe, values: Vec<f64>) -> Result<Self> {
        if values.len() != universe.len() {
            return Err(Error::LengthMismatch {
                expected: universe.len(),
                actual: values.len(),
            });
        }
        for &v in &values {
            check_unit(v)?;
        }
        Ok(Self {
            universe: universe.clone(),
            values,
        })
    }

    pub fn constant(universe: &Universe, value: f64) -> Result<Self> {
        Self::new(universe, vec![check_unit(value)?; universe.len()])
    }

    /// The characteristic function of `p`.
    pub fn crisp(p: &Proposition) -> Self {
        Self {
            universe: p.universe().clone(),
            values: p.mask().iter().map(|&m| if m { 1.0 } else { 0.0 }).collect(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, world: usize) -> f64 {
        self.values[world]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every value is 0 or 1.
    pub fn is_crisp(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    pub(crate) fn from_raw(universe: &Universe, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), universe.len());
        Self {
            universe: universe.clone(),
            values,
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(Self::from_raw(
            &self.universe,
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        ))
    }

    pub fn and(&self, profile: &NormProfile, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| profile.tnorm.apply(a, b))
    }

    pub fn or(&self, profile: &NormProfile, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| profile.conorm.apply(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(&self, profile: &NormProfile) -> Self {
        Self::from_raw(
            &self.universe,
            self.values.iter().map(|&a| profile.negation.apply(a)).collect(),
        )
    }

    /// `(self -> consequent)(w) = residuum(self(w), consequent(w))`.
    pub fn implies(&self, profile: &NormProfile, consequent: &Self) -> Result<Self> {
        self.zip(consequent, |a, b| profile.tnorm.residuum(a, b))
    }

    /// Infimum of the measure over the worlds of `p`.
    pub fn prop_lower(&self, p: &Proposition) -> Result<f64> {
        self.over(p, f64::INFINITY, f64::min)
    }

    /// Supremum of the measure over the worlds of `p`.
    pub fn prop_upper(&self, p: &Proposition) -> Result<f64> {
        self.over(p, f64::NEG_INFINITY, f64::max)
    }

    fn over(&self, p: &Proposition, init: f64, f: impl Fn(f64, f64) -> f64) -> Result<f64> {
        if p.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        if p.is_empty() {
            return Err(Error::EmptyProposition);
        }
        Ok(p.ids().map(|w| self.values[w]).fold(init, f))
    }

    /// Pointwise order, with tolerance.
    pub fn le(&self, other: &Self) -> bool {
        self.universe == other.universe && self.values.iter().zip(&other.values).all(|(&a, &b)| leq(a, b))
    }
}

/// Pointwise bounds `lower <= D <= upper` on an unknown measure `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct DesirabilityInterval {
    lower: DesirabilityMeasure,
    upper: DesirabilityMeasure,
}

impl DesirabilityInterval {
    pub fn new(lower: DesirabilityMeasure, upper: DesirabilityMeasure) -> Result<Self> {
        if lower.universe != upper.universe {
            return Err(Error::UniverseMismatch);
        }
        for (index, (&lo, &hi)) in lower.values.iter().zip(&upper.values).enumerate() {
            if !leq(lo, hi) {
                return Err(Error::BoundOrder {
                    index,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The degenerate interval `[D, D]`.
    pub fn exact(measure: DesirabilityMeasure) -> Self {
        Self {
            lower: measure.clone(),
            upper: measure,
        }
    }

    /// Total ignorance: `[0, 1]` at every world.
    pub fn vacuous(universe: &Universe) -> Self {
        Self {
            lower: DesirabilityMeasure::from_raw(universe, vec![0.0; universe.len()]),
            upper: DesirabilityMeasure::from_raw(universe, vec![1.0; universe.len()]),
        }
    }

    /// Piecewise-constant bounds: every world of `partition[i]` gets
    /// `[lowers[i], uppers[i]]`.
    pub fn from_partition(
        universe: &Universe,
        partition: &[Proposition],
        lowers: &[f64],
        uppers: &[f64],
    ) -> Result<Self> {
        if !is_partition(universe, partition) {
            return Err(Error::NotAPartition);
        }
        for values in [lowers, uppers] {
            if values.len() != partition.len() {
                return Err(Error::LengthMismatch {
                    expected: partition.len(),
                    actual: values.len(),
                });
            }
        }
        let mut lo = vec![0.0; universe.len()];
        let mut hi = vec![0.0; universe.len()];
        for (i, block) in partition.iter().enumerate() {
            let (l, u) = (check_unit(lowers[i])?, check_unit(uppers[i])?);
            if l > u {
                return Err(Error::BoundOrder {
                    index: i,
                    lower: l,
                    upper: u,
                });
            }
            for w in block.ids() {
                lo[w] = l;
                hi[w] = u;
            }
        }
        Ok(Self {
            lower: DesirabilityMeasure::from_raw(universe, lo),
            upper: DesirabilityMeasure::from_raw(universe, hi),
        })
    }

    pub fn lower(&self) -> &DesirabilityMeasure {
        &self.lower
    }

    pub fn upper(&self) -> &DesirabilityMeasure {
        &self.upper
    }

    pub fn universe(&self) -> &Universe {
        &self.lower.universe
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Whether `measure` lies inside the bounds (tolerance 1e-9).
    pub fn contains(&self, measure: &DesirabilityMeasure) -> bool {
        self.lower.le(measure) && measure.le(&self.upper)
    }

    /// Bounds for `~D` from bounds for `D`; the lower bound of the result is
    /// the negated upper bound and vice versa. Since the negation is an
    /// involution, applying this to bounds for `~D` yields bounds for `D`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(&self, profile: &NormProfile) -> Self {
        Self {
            lower: self.upper.not(profile),
            upper: self.lower.not(profile),
        }
    }

    pub fn and(&self, profile: &NormProfile, other: &Self) -> Result<Self> {
        Ok(Self {
            lower: self.lower.and(profile, &other.lower)?,
            upper: self.upper.and(profile, &other.upper)?,
        })
    }

    pub fn or(&self, profile: &NormProfile, other: &Self) -> Result<Self> {
        Ok(Self {
            lower: self.lower.or(profile, &other.lower)?,
            upper: self.upper.or(profile, &other.upper)?,
        })
    }

    /// Bounds for `self -> consequent`. The residuum is antitone in the
    /// antecedent, so the lower bound pairs the antecedent's upper bound with
    /// the consequent's lower bound, and the upper bound the reverse.
    pub fn implies(&self, profile: &NormProfile, consequent: &Self) -> Result<Self> {
        Ok(Self {
            lower: self.upper.implies(profile, &consequent.lower)?,
            upper: self.lower.implies(profile, &consequent.upper)?,
        })
    }

    /// Necessary desirability of `p`: the infimum of the lower bound over `p`.
    pub fn prop_lower(&self, p: &Proposition) -> Result<f64> {
        self.lower.prop_lower(p)
    }

    /// Possible desirability of `p`: the supremum of the upper bound over `p`.
    pub fn prop_upper(&self, p: &Proposition) -> Result<f64> {
        self.upper.prop_upper(p)
    }
}
