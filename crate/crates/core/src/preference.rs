//! Conorm-based preference relations.
//!
//! `rho(w | w')` grades how much world `w` is preferred to `w'`. A valid
//! relation has a zero diagonal, antisymmetric support, and is bounded along
//! chains by its conorm: `rho(w | w'') <= S(rho(w | w'), rho(w' | w''))`.
//!
//! Every desirability measure `D` induces a relation through the conorm
//! pseudoinverse, `rho_D(w | w') = D(w) (-) D(w')`. Conversely every valid
//! relation is the pointwise supremum of such induced relations over its
//! generator columns `D_w(w') = rho(w' | w)` (the canonical family returned by
//! [`PreferenceRelation::valverde_family`]).

use crate::desirability::{DesirabilityInterval, DesirabilityMeasure};
use crate::error::{Error, Result};
use crate::matrix::PairMatrix;
use crate::norm::{leq, ConormFamily, NormProfile, TOLERANCE};
use crate::report::{AxiomReport, Tally, Witness};
use crate::worlds::{Proposition, Universe};

use crate::envelope::transitive_envelope;

#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceRelation {
    universe: Universe,
    conorm: ConormFamily,
    matrix: PairMatrix,
}

impl PreferenceRelation {
    /// Wraps a matrix without checking the axioms; see [`Self::verify_axioms`].
    pub fn new(universe: &Universe, conorm: ConormFamily, matrix: PairMatrix) -> Result<Self> {
        if matrix.size() != universe.len() {
            return Err(Error::LengthMismatch {
                expected: universe.len(),
                actual: matrix.size(),
            });
        }
        Ok(Self {
            universe: universe.clone(),
            conorm,
            matrix,
        })
    }

    pub fn from_desirability(measure: &DesirabilityMeasure, conorm: ConormFamily) -> Self {
        let v = measure.values();
        Self {
            universe: measure.universe().clone(),
            conorm,
            matrix: PairMatrix::from_fn(v.len(), |i, j| conorm.pseudoinverse(v[i], v[j])),
        }
    }

    /// The all-zero relation: total indifference.
    pub fn zero(universe: &Universe, conorm: ConormFamily) -> Self {
        Self {
            universe: universe.clone(),
            conorm,
            matrix: PairMatrix::zeros(universe.len()),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn conorm(&self) -> ConormFamily {
        self.conorm
    }

    pub fn matrix(&self) -> &PairMatrix {
        &self.matrix
    }

    /// `rho(w | other)`.
    pub fn preference(&self, w: usize, other: usize) -> f64 {
        self.matrix.get(w, other)
    }

    pub fn len(&self) -> usize {
        self.matrix.size()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.size() == 0
    }

    /// Exhaustive check of irreflexivity, antisymmetry and conorm
    /// transitivity, each with the first violating worlds as witness.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.len();
        let m = &self.matrix;
        let mut report = AxiomReport::new(format!("{}-preference relation", self.conorm));

        let mut irreflexive = Tally::new("irreflexivity");
        for w in 0..n {
            irreflexive.expect(m.get(w, w).abs() <= TOLERANCE, || Witness::Worlds(vec![w]));
        }
        let mut antisymmetric = Tally::new("antisymmetry");
        for w in 0..n {
            for v in w + 1..n {
                let both = m.get(w, v) > TOLERANCE && m.get(v, w) > TOLERANCE;
                antisymmetric.expect(!both, || Witness::Worlds(vec![w, v]));
            }
        }
        let mut transitive = Tally::new("transitivity");
        for w in 0..n {
            for mid in 0..n {
                for v in 0..n {
                    let bound = self.conorm.apply(m.get(w, mid), m.get(mid, v));
                    transitive.expect(leq(m.get(w, v), bound), || Witness::Worlds(vec![w, mid, v]));
                }
            }
        }
        report.push(irreflexive);
        report.push(antisymmetric);
        report.push(transitive);
        report
    }

    fn require_axioms(&self) -> Result<()> {
        let report = self.verify_axioms();
        if report.all_pass() {
            Ok(())
        } else {
            Err(Error::AxiomViolation(Box::new(report)))
        }
    }

    /// One generator per world, `D_w(w') = rho(w' | w)`, without
    /// deduplication or axiom checks. Index `w` of the family is world `w`.
    pub fn generator_columns(&self) -> GeneratingFamily {
        let n = self.len();
        let generators = (0..n)
            .map(|w| DesirabilityMeasure::from_raw(&self.universe, (0..n).map(|v| self.matrix.get(v, w)).collect()))
            .collect();
        GeneratingFamily {
            universe: self.universe.clone(),
            generators,
        }
    }

    /// The canonical generating family: generator columns with duplicates
    /// (equal after rounding to 1e-12) removed, first occurrence kept.
    pub fn valverde_family(&self) -> Result<GeneratingFamily> {
        self.require_axioms()?;
        let mut family = self.generator_columns();
        let mut seen: Vec<Vec<i64>> = Vec::new();
        family.generators.retain(|g| {
            let key: Vec<i64> = g.values().iter().map(|v| (v * 1e12).round() as i64).collect();
            if seen.contains(&key) {
                false
            } else {
                seen.push(key);
                true
            }
        });
        Ok(family)
    }

    /// Looks for a single measure `D` with `from_desirability(D) == self`.
    ///
    /// Bounded sum has a closed form: the differences against world 0 fix
    /// `D` up to an additive shift. The maximum and probabilistic-sum conorms
    /// fall back to a search over the grid `k/32` (plus the relation's own
    /// entries) on at most four worlds.
    pub fn single_generator(&self) -> GeneratorSearch {
        if self.is_empty() {
            return GeneratorSearch::Unknown;
        }
        if !self.verify_axioms().all_pass() {
            return GeneratorSearch::NotRepresentable;
        }
        match self.conorm {
            ConormFamily::BoundedSum => self.bounded_sum_generator(),
            _ => self.searched_generator(),
        }
    }

    fn bounded_sum_generator(&self) -> GeneratorSearch {
        let n = self.len();
        let delta: Vec<f64> = (0..n).map(|w| self.matrix.get(w, 0) - self.matrix.get(0, w)).collect();
        let lo = -delta.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = 1.0 - delta.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo > hi + TOLERANCE {
            return GeneratorSearch::NotRepresentable;
        }
        let values = delta.iter().map(|d| (lo + d).clamp(0.0, 1.0)).collect();
        let measure = DesirabilityMeasure::from_raw(&self.universe, values);
        let induced = Self::from_desirability(&measure, self.conorm);
        if induced.matrix.approx_eq(&self.matrix) {
            GeneratorSearch::Found {
                measure,
                shift: Some((lo, hi.max(lo))),
            }
        } else {
            GeneratorSearch::NotRepresentable
        }
    }

    fn searched_generator(&self) -> GeneratorSearch {
        const MAX_WORLDS: usize = 4;
        const STEPS: u32 = 32;
        let n = self.len();
        if n > MAX_WORLDS {
            return GeneratorSearch::Unknown;
        }
        let mut candidates: Vec<f64> = (0..=STEPS).map(|k| k as f64 / STEPS as f64).collect();
        candidates.extend_from_slice(self.matrix.data());
        candidates.sort_by(f64::total_cmp);
        candidates.dedup_by(|a, b| (*a - *b).abs() <= TOLERANCE);

        let mut assigned = Vec::with_capacity(n);
        if self.search(&candidates, &mut assigned) {
            GeneratorSearch::Found {
                measure: DesirabilityMeasure::from_raw(&self.universe, assigned),
                shift: None,
            }
        } else {
            // a miss on the grid does not rule out off-grid generators
            GeneratorSearch::Unknown
        }
    }

    fn search(&self, candidates: &[f64], assigned: &mut Vec<f64>) -> bool {
        let k = assigned.len();
        if k == self.len() {
            return true;
        }
        for &c in candidates {
            let consistent = (0..k).all(|j| {
                (self.conorm.pseudoinverse(c, assigned[j]) - self.matrix.get(k, j)).abs() <= TOLERANCE
                    && (self.conorm.pseudoinverse(assigned[j], c) - self.matrix.get(j, k)).abs() <= TOLERANCE
            });
            if consistent {
                assigned.push(c);
                if self.search(candidates, assigned) {
                    return true;
                }
                assigned.pop();
            }
        }
        false
    }

    /// Combines relations through their generator columns: the columns of
    /// both operands are merged index by index with the measure-level
    /// connective, then regenerated with this relation's conorm. The result
    /// is not guaranteed to be antisymmetric, so the axiom report travels
    /// with it.
    pub fn combine(&self, profile: &NormProfile, op: Combination<'_>) -> Result<Combined> {
        let left = self.generator_columns();
        let generators = match op {
            Combination::Not => left.generators.iter().map(|g| g.not(profile)).collect(),
            Combination::And(other) | Combination::Or(other) | Combination::Implies(other) => {
                if other.universe != self.universe {
                    return Err(Error::UniverseMismatch);
                }
                if other.conorm != self.conorm {
                    return Err(Error::ConormMismatch {
                        left: self.conorm.to_string(),
                        right: other.conorm.to_string(),
                    });
                }
                let right = other.generator_columns();
                left.generators
                    .iter()
                    .zip(&right.generators)
                    .map(|(a, b)| match op {
                        Combination::And(_) => a.and(profile, b),
                        Combination::Or(_) => a.or(profile, b),
                        _ => a.implies(profile, b),
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        if generators.is_empty() {
            return Ok(Combined::from(Self::zero(&self.universe, self.conorm)));
        }
        let family = GeneratingFamily::new(&self.universe, generators)?;
        Ok(Combined::from(family.regenerate(self.conorm)?))
    }

    /// Necessary preference of `p`-worlds over `q`-worlds:
    /// `inf_{w in p} inf_{w' in q} rho(w | w')`.
    pub fn prop_pref_lower(&self, p: &Proposition, q: &Proposition) -> Result<f64> {
        self.check_props(p, q)?;
        self.matrix.inf_inf(p, q)
    }

    /// Possible preference of `p`-worlds over `q`-worlds:
    /// `sup_{w in p} inf_{w' in q} rho(w | w')`.
    pub fn prop_pref_upper(&self, p: &Proposition, q: &Proposition) -> Result<f64> {
        self.check_props(p, q)?;
        self.matrix.sup_inf(p, q)
    }

    /// `sup_{w in p} sup_{w' in q} rho(w | w')`, an alternative upper
    /// aggregation kept for comparison with [`Self::prop_pref_upper`].
    pub fn prop_pref_upper_sup_sup(&self, p: &Proposition, q: &Proposition) -> Result<f64> {
        self.check_props(p, q)?;
        self.matrix.sup_sup(p, q)
    }

    fn check_props(&self, p: &Proposition, q: &Proposition) -> Result<()> {
        if p.universe() != &self.universe || q.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }
}

/// Outcome of [`PreferenceRelation::single_generator`].
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSearch {
    /// `measure` generates the relation. For bounded sum, `shift` is the
    /// closed range of constants `c` such that `c + delta` generates it, where
    /// `delta(w) = rho(w | w0) - rho(w0 | w)`; `measure` uses the smallest.
    Found {
        measure: DesirabilityMeasure,
        shift: Option<(f64, f64)>,
    },
    /// No single measure generates the relation.
    NotRepresentable,
    /// The search was inconclusive.
    Unknown,
}

impl GeneratorSearch {
    pub fn measure(&self) -> Option<&DesirabilityMeasure> {
        match self {
            GeneratorSearch::Found { measure, .. } => Some(measure),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Combination<'a> {
    And(&'a PreferenceRelation),
    Or(&'a PreferenceRelation),
    Implies(&'a PreferenceRelation),
    Not,
}

/// A regenerated relation with its axiom report.
#[derive(Debug, Clone)]
pub struct Combined {
    pub relation: PreferenceRelation,
    pub report: AxiomReport,
}

impl From<PreferenceRelation> for Combined {
    fn from(relation: PreferenceRelation) -> Self {
        let report = relation.verify_axioms();
        Self { relation, report }
    }
}

/// An indexed family of desirability measures over one universe.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingFamily {
    universe: Universe,
    generators: Vec<DesirabilityMeasure>,
}

impl GeneratingFamily {
    pub fn new(universe: &Universe, generators: Vec<DesirabilityMeasure>) -> Result<Self> {
        if generators.iter().any(|g| g.universe() != universe) {
            return Err(Error::UniverseMismatch);
        }
        Ok(Self {
            universe: universe.clone(),
            generators,
        })
    }

    pub fn generators(&self) -> &[DesirabilityMeasure] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `rho(w | w') = sup_a D_a(w) (-) D_a(w')`.
    ///
    /// The diagonal is always zero; antisymmetry is not guaranteed for
    /// arbitrary families, so check the result with
    /// [`PreferenceRelation::verify_axioms`].
    pub fn regenerate(&self, conorm: ConormFamily) -> Result<PreferenceRelation> {
        if self.generators.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let n = self.universe.len();
        let matrix = PairMatrix::from_fn(n, |i, j| {
            self.generators
                .iter()
                .map(|g| conorm.pseudoinverse(g.value(i), g.value(j)))
                .fold(0.0, f64::max)
        });
        Ok(PreferenceRelation {
            universe: self.universe.clone(),
            conorm,
            matrix,
        })
    }
}

/// Pairwise necessary/possible bounds on an unknown preference relation.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceInterval {
    universe: Universe,
    conorm: ConormFamily,
    lower: PairMatrix,
    upper: PairMatrix,
}

impl PreferenceInterval {
    pub fn new(universe: &Universe, conorm: ConormFamily, lower: PairMatrix, upper: PairMatrix) -> Result<Self> {
        let n = universe.len();
        for m in [&lower, &upper] {
            if m.size() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: m.size(),
                });
            }
        }
        for (index, (&lo, &hi)) in lower.data().iter().zip(upper.data()).enumerate() {
            if !leq(lo, hi) {
                return Err(Error::BoundOrder {
                    index,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self {
            universe: universe.clone(),
            conorm,
            lower,
            upper,
        })
    }

    /// Bounds on `rho_D` for any `D` inside `interval`:
    /// `lower(w | w') = N(w) (-) P(w')` and `upper(w | w') = P(w) (-) N(w')`,
    /// with `N`/`P` the necessary/possible desirability.
    ///
    /// The upper diagonal is kept as the formula gives it (it is positive
    /// wherever `N(w) < P(w)`); [`Self::tightened`] zeroes it.
    pub fn from_desirability_interval(interval: &DesirabilityInterval, conorm: ConormFamily) -> Self {
        let lo = interval.lower().values();
        let hi = interval.upper().values();
        let n = lo.len();
        Self {
            universe: interval.universe().clone(),
            conorm,
            lower: PairMatrix::from_fn(n, |i, j| conorm.pseudoinverse(lo[i], hi[j])),
            upper: PairMatrix::from_fn(n, |i, j| conorm.pseudoinverse(hi[i], lo[j])),
        }
    }

    pub fn exact(relation: &PreferenceRelation) -> Self {
        Self {
            universe: relation.universe.clone(),
            conorm: relation.conorm,
            lower: relation.matrix.clone(),
            upper: relation.matrix.clone(),
        }
    }

    pub fn lower(&self) -> &PairMatrix {
        &self.lower
    }

    pub fn upper(&self) -> &PairMatrix {
        &self.upper
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn conorm(&self) -> ConormFamily {
        self.conorm
    }

    /// The same bounds with a zero upper diagonal. Every relation satisfies
    /// irreflexivity, so no enclosed relation is lost.
    pub fn tightened(&self) -> Self {
        let mut upper = self.upper.clone();
        let mut lower = self.lower.clone();
        for w in 0..upper.size() {
            upper.set(w, w, 0.0);
            lower.set(w, w, 0.0);
        }
        Self {
            upper,
            lower,
            ..self.clone()
        }
    }

    /// The greatest conorm-transitive function below the tightened upper
    /// bound. It still encloses every valid relation inside the interval.
    pub fn transitive_upper(&self) -> PairMatrix {
        transitive_envelope(&self.tightened().upper, self.conorm).expect("tightened upper bound has a zero diagonal")
    }

    /// Whether `relation` lies between the bounds (tolerance 1e-9).
    pub fn contains(&self, relation: &PreferenceRelation) -> bool {
        relation.universe == self.universe && self.lower.le(&relation.matrix) && relation.matrix.le(&self.upper)
    }

    /// `inf_{w in p} inf_{w' in q}` of the lower bound.
    pub fn prop_pref_lower(&self, p: &Proposition, q: &Proposition) -> Result<f64> {
        self.lower.inf_inf(p, q)
    }

    /// `sup_{w in p} inf_{w' in q}` of the upper bound.
    pub fn prop_pref_upper(&self, p: &Proposition, q: &Proposition) -> Result<f64> {
        self.upper.sup_inf(p, q)
    }
}
