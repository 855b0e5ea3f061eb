//! Similarity relations derived from preference relations.
//!
//! Two worlds are similar to the degree that neither is preferred to the
//! other: `S(w, w') = min(~rho(w | w'), ~rho(w' | w))`. With the standard
//! negation a conorm-transitive preference yields a similarity that is
//! transitive for the dual t-norm.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PairMatrix;
use crate::norm::{close, leq, NegationFamily, TNormFamily};
use crate::preference::{PreferenceInterval, PreferenceRelation};
use crate::report::{AxiomReport, Tally, Witness};
use crate::worlds::{Proposition, Universe};

/// Which inequality [`SimilarityRelation::verify_with`] checks for
/// transitivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitivityDirection {
    /// `S(w, w') >= T(S(w, w''), S(w'', w'))`.
    #[default]
    Standard,
    /// `S(w, w') <= T(S(w, w''), S(w'', w'))`. Satisfied by the all-zero
    /// function; exposed only so the reversed reading can be exercised.
    Reversed,
}

/// The inequality direction used by [`SimilarityRelation::verify`].
pub const TRANSITIVITY_DIRECTION: TransitivityDirection = TransitivityDirection::Standard;

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityRelation {
    universe: Universe,
    tnorm: TNormFamily,
    matrix: PairMatrix,
}

impl SimilarityRelation {
    /// Wraps a matrix without checking the axioms.
    pub fn new(universe: &Universe, tnorm: TNormFamily, matrix: PairMatrix) -> Result<Self> {
        if matrix.size() != universe.len() {
            return Err(Error::LengthMismatch {
                expected: universe.len(),
                actual: matrix.size(),
            });
        }
        Ok(Self {
            universe: universe.clone(),
            tnorm,
            matrix,
        })
    }

    /// `S(w, w') = min(~rho(w | w'), ~rho(w' | w))`, declared transitive for
    /// the t-norm dual to the relation's conorm.
    pub fn from_preference(rho: &PreferenceRelation, negation: NegationFamily) -> Result<Self> {
        let report = rho.verify_axioms();
        if !report.all_pass() {
            return Err(Error::AxiomViolation(Box::new(report)));
        }
        Ok(Self {
            universe: rho.universe().clone(),
            tnorm: rho.conorm().dual(),
            matrix: negated_min(rho.matrix(), negation),
        })
    }

    /// The crisp equality relation: 1 on the diagonal, 0 elsewhere.
    pub fn identity(universe: &Universe, tnorm: TNormFamily) -> Self {
        let n = universe.len();
        Self {
            universe: universe.clone(),
            tnorm,
            matrix: PairMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 }),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn tnorm(&self) -> TNormFamily {
        self.tnorm
    }

    pub fn matrix(&self) -> &PairMatrix {
        &self.matrix
    }

    pub fn get(&self, w: usize, other: usize) -> f64 {
        self.matrix.get(w, other)
    }

    pub fn verify(&self) -> AxiomReport {
        self.verify_with(TRANSITIVITY_DIRECTION)
    }

    /// Exhaustive reflexivity, symmetry and t-norm transitivity check.
    pub fn verify_with(&self, direction: TransitivityDirection) -> AxiomReport {
        let n = self.matrix.size();
        let m = &self.matrix;
        let mut report = AxiomReport::new(format!("{}-similarity relation", self.tnorm));

        let mut reflexive = Tally::new("reflexivity");
        for w in 0..n {
            reflexive.expect(close(m.get(w, w), 1.0), || Witness::Worlds(vec![w]));
        }
        let mut symmetric = Tally::new("symmetry");
        for w in 0..n {
            for v in w + 1..n {
                symmetric.expect(close(m.get(w, v), m.get(v, w)), || Witness::Worlds(vec![w, v]));
            }
        }
        let mut transitive = Tally::new("transitivity");
        for w in 0..n {
            for mid in 0..n {
                for v in 0..n {
                    let chained = self.tnorm.apply(m.get(w, mid), m.get(mid, v));
                    let ok = match direction {
                        TransitivityDirection::Standard => leq(chained, m.get(w, v)),
                        TransitivityDirection::Reversed => leq(m.get(w, v), chained),
                    };
                    transitive.expect(ok, || Witness::Worlds(vec![w, mid, v]));
                }
            }
        }
        report.push(reflexive);
        report.push(symmetric);
        report.push(transitive);
        if direction == TransitivityDirection::Reversed {
            report.flag("transitivity checked in the reversed direction S <= T(S, S)");
        }
        report
    }

    /// For a {0,1}-valued relation, the classes of worlds at similarity 1
    /// (ordered by smallest member). `None` if the relation is not crisp or
    /// its 1-entries do not form an equivalence.
    pub fn equivalence_classes(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.matrix.size();
        if !self.matrix.data().iter().all(|&v| v == 0.0 || v == 1.0) {
            return None;
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; n];
        for w in 0..n {
            if assigned[w] {
                continue;
            }
            let class: Vec<usize> = (0..n).filter(|&v| self.get(w, v) == 1.0).collect();
            for &v in &class {
                if assigned[v] {
                    return None;
                }
                assigned[v] = true;
            }
            classes.push(class);
        }
        // every pair inside a class must be 1, every pair across must be 0
        for class in &classes {
            for &a in class {
                for v in 0..n {
                    if (self.get(a, v) == 1.0) != class.contains(&v) {
                        return None;
                    }
                }
            }
        }
        Some(classes)
    }
}

fn negated_min(m: &PairMatrix, negation: NegationFamily) -> PairMatrix {
    PairMatrix::from_fn(m.size(), |i, j| {
        negation.apply(m.get(i, j)).min(negation.apply(m.get(j, i)))
    })
}

/// Bounds on the resemblance between `p`-worlds and `q`-worlds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResemblanceBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Necessary and possible preference of one proposition over another.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreferenceBounds {
    pub necessary: f64,
    pub possible: f64,
}

/// Maps the preference bounds of `p` over `q` and of `q` over `p` to
/// resemblance bounds: `lower = min(~P(p|q), ~P(q|p))` and
/// `upper = min(~N(p|q), ~N(q|p))`.
pub fn resemblance_bounds(
    negation: NegationFamily,
    p_over_q: PreferenceBounds,
    q_over_p: PreferenceBounds,
) -> ResemblanceBounds {
    let neg = |x| negation.apply(x);
    ResemblanceBounds {
        lower: neg(p_over_q.possible).min(neg(q_over_p.possible)),
        upper: neg(p_over_q.necessary).min(neg(q_over_p.necessary)),
    }
}

/// Resemblance bounds of `p` and `q` under an exact relation.
pub fn relation_resemblance(
    rho: &PreferenceRelation,
    negation: NegationFamily,
    p: &Proposition,
    q: &Proposition,
) -> Result<ResemblanceBounds> {
    let bounds = |a, b| -> Result<PreferenceBounds> {
        Ok(PreferenceBounds {
            necessary: rho.prop_pref_lower(a, b)?,
            possible: rho.prop_pref_upper(a, b)?,
        })
    };
    Ok(resemblance_bounds(negation, bounds(p, q)?, bounds(q, p)?))
}

/// Resemblance bounds of `p` and `q` under a preference interval: necessary
/// preferences come from the lower matrix, possible ones from the upper.
pub fn interval_resemblance(
    interval: &PreferenceInterval,
    negation: NegationFamily,
    p: &Proposition,
    q: &Proposition,
) -> Result<ResemblanceBounds> {
    let bounds = |a, b| -> Result<PreferenceBounds> {
        Ok(PreferenceBounds {
            necessary: interval.prop_pref_lower(a, b)?,
            possible: interval.prop_pref_upper(a, b)?,
        })
    };
    Ok(resemblance_bounds(negation, bounds(p, q)?, bounds(q, p)?))
}

/// Pairwise similarity bounds implied by a preference interval: the
/// resemblance mapping applied to every pair of singletons.
pub fn similarity_bounds(interval: &PreferenceInterval, negation: NegationFamily) -> (PairMatrix, PairMatrix) {
    (
        negated_min(interval.upper(), negation),
        negated_min(interval.lower(), negation),
    )
}
