//! Runs a validated problem through the core: aggregate desirability,
//! preference, ranking, similarity, propositional bounds and axiom reports.

use std::cmp::Ordering;

use desirability::{
    interval_resemblance, relation_resemblance, similarity_bounds, verify_profile, AxiomReport, DesirabilityInterval,
    DesirabilityMeasure, Formula, Grid, PairMatrix, PreferenceInterval, PreferenceRelation, Proposition,
    ResemblanceBounds, SimilarityRelation,
};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::spec::{Grade, NamedProposition, ProblemSpec, Query};

/// Failure inside the core after validation; maps to the internal exit code.
#[derive(Debug)]
pub struct InternalError(pub String);

impl std::fmt::Display for InternalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "internal error: {}", self.0)
    }
}

impl std::error::Error for InternalError {}

impl From<desirability::Error> for InternalError {
    fn from(e: desirability::Error) -> Self {
        InternalError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, InternalError>;

const SUP_NOTE: &str = "possible desirability of a proposition is the supremum of the upper bound over its worlds; \
                        an infimum there would not bound the worlds from above";
const TRANSITIVITY_NOTE: &str =
    "similarity transitivity is checked as S(w,w') >= T(S(w,w''), S(w'',w')) with T dual to the preference conorm";
const SUP_SUP_NOTE: &str = "possible preference of p over q is sup over p-worlds of inf over q-worlds; \
                            the sup-sup aggregate is listed separately for comparison only";
const DIAGONAL_NOTE: &str = "the raw possible-preference bound can be positive on the diagonal; \
                             the tightened bound zeroes it, as every exact preference does";
const ENVELOPE_NOTE: &str = "the transitive upper preference bound is not required to be antisymmetric, \
                             so only irreflexivity and transitivity are asserted for it";
const RESEMBLANCE_NOTE: &str = "resemblance lower = min(~P(p|q), ~P(q|p)) and upper = min(~N(p|q), ~N(q|p)); \
                                which of them is the degree of implication is left open";

#[derive(Debug, Clone, PartialEq)]
pub enum Aggregate {
    Exact(DesirabilityMeasure),
    Interval(DesirabilityInterval),
}

impl Aggregate {
    fn lift(&self) -> DesirabilityInterval {
        match self {
            Aggregate::Exact(d) => DesirabilityInterval::exact(d.clone()),
            Aggregate::Interval(i) => i.clone(),
        }
    }

    pub fn necessary(&self, p: &Proposition) -> Result<f64> {
        Ok(match self {
            Aggregate::Exact(d) => d.prop_lower(p)?,
            Aggregate::Interval(i) => i.prop_lower(p)?,
        })
    }

    pub fn possible(&self, p: &Proposition) -> Result<f64> {
        Ok(match self {
            Aggregate::Exact(d) => d.prop_upper(p)?,
            Aggregate::Interval(i) => i.prop_upper(p)?,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Preference {
    Exact(PreferenceRelation),
    Interval(PreferenceInterval),
}

/// Rows printed for the `matrix` command, in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixOutput {
    Exact(PairMatrix),
    Bounds(Vec<(&'static str, PairMatrix)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Valuation(pub Vec<(String, bool)>);

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (atom, value) in &self.0 {
            map.serialize_entry(atom, value)?;
        }
        map.end()
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.0.iter().map(|(a, v)| format!("{a}={}", u8::from(*v))).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEntry {
    pub world: usize,
    pub valuation: Valuation,
    /// Exact desirability, or the necessary (lower) bound for intervals.
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreferenceAnswer {
    pub p: String,
    pub q: String,
    pub necessary: f64,
    pub possible: f64,
    pub possible_sup_sup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsAnswer {
    pub of: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub given: Option<String>,
    pub necessary: f64,
    pub possible: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resemblance: Option<ResemblanceBounds>,
}

pub struct Evaluation<'a> {
    pub spec: &'a ProblemSpec,
    pub aggregate: Aggregate,
    pub preference: Preference,
}

/// Combines the constraint grades along the aggregate formula. Exact inputs
/// stay exact; any interval input lifts the whole subtree to intervals.
fn combine(spec: &ProblemSpec, formula: &Formula) -> Result<Aggregate> {
    let p = &spec.profile;
    Ok(match formula {
        Formula::Atom(name) => match &spec
            .constraint(name)
            .ok_or_else(|| InternalError(format!("unknown constraint `{name}`")))?
            .grade
        {
            Grade::Exact(d) => Aggregate::Exact(d.clone()),
            Grade::Interval(i) => Aggregate::Interval(i.clone()),
        },
        Formula::Not(a) => match combine(spec, a)? {
            Aggregate::Exact(d) => Aggregate::Exact(d.not(p)),
            Aggregate::Interval(i) => Aggregate::Interval(i.not(p)),
        },
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            let (x, y) = (combine(spec, a)?, combine(spec, b)?);
            match (&x, &y, formula) {
                (Aggregate::Exact(x), Aggregate::Exact(y), Formula::And(..)) => Aggregate::Exact(x.and(p, y)?),
                (Aggregate::Exact(x), Aggregate::Exact(y), Formula::Or(..)) => Aggregate::Exact(x.or(p, y)?),
                (Aggregate::Exact(x), Aggregate::Exact(y), _) => Aggregate::Exact(x.implies(p, y)?),
                (_, _, Formula::And(..)) => Aggregate::Interval(x.lift().and(p, &y.lift())?),
                (_, _, Formula::Or(..)) => Aggregate::Interval(x.lift().or(p, &y.lift())?),
                _ => Aggregate::Interval(x.lift().implies(p, &y.lift())?),
            }
        }
    })
}

pub fn evaluate(spec: &ProblemSpec) -> Result<Evaluation<'_>> {
    let aggregate = combine(spec, &spec.aggregate)?;
    let conorm = spec.profile.conorm;
    let preference = match &aggregate {
        Aggregate::Exact(d) => Preference::Exact(PreferenceRelation::from_desirability(d, conorm)),
        Aggregate::Interval(i) => Preference::Interval(PreferenceInterval::from_desirability_interval(i, conorm)),
    };
    Ok(Evaluation {
        spec,
        aggregate,
        preference,
    })
}

impl Evaluation<'_> {
    pub fn valuation(&self, world: usize) -> Valuation {
        Valuation(
            self.spec
                .universe
                .valuation(world)
                .map(|(a, v)| (a.to_string(), v))
                .collect(),
        )
    }

    /// Worlds by decreasing desirability, ties by ascending world id. Interval
    /// aggregates sort by lower bound, then upper bound.
    pub fn ranking(&self) -> Vec<RankEntry> {
        let mut entries: Vec<RankEntry> = match &self.aggregate {
            Aggregate::Exact(d) => (0..d.len())
                .map(|w| RankEntry {
                    world: w,
                    valuation: self.valuation(w),
                    value: d.value(w),
                    upper: None,
                })
                .collect(),
            Aggregate::Interval(i) => (0..i.lower().len())
                .map(|w| RankEntry {
                    world: w,
                    valuation: self.valuation(w),
                    value: i.lower().value(w),
                    upper: Some(i.upper().value(w)),
                })
                .collect(),
        };
        entries.sort_by(|a, b| {
            b.value
                .total_cmp(&a.value)
                .then_with(|| match (a.upper, b.upper) {
                    (Some(x), Some(y)) => y.total_cmp(&x),
                    _ => Ordering::Equal,
                })
                .then(a.world.cmp(&b.world))
        });
        entries
    }

    pub fn preference_matrix(&self) -> MatrixOutput {
        match &self.preference {
            Preference::Exact(rho) => MatrixOutput::Exact(rho.matrix().clone()),
            Preference::Interval(bounds) => MatrixOutput::Bounds(vec![
                ("lower", bounds.lower().clone()),
                ("upper", bounds.upper().clone()),
                ("upper_tightened", bounds.tightened().upper().clone()),
                ("upper_transitive", bounds.transitive_upper()),
            ]),
        }
    }

    pub fn similarity(&self) -> Result<Option<SimilarityRelation>> {
        match &self.preference {
            Preference::Exact(rho) => Ok(Some(SimilarityRelation::from_preference(
                rho,
                self.spec.profile.negation,
            )?)),
            Preference::Interval(_) => Ok(None),
        }
    }

    pub fn similarity_matrix(&self) -> Result<MatrixOutput> {
        match &self.preference {
            Preference::Exact(rho) => Ok(MatrixOutput::Exact(
                SimilarityRelation::from_preference(rho, self.spec.profile.negation)?
                    .matrix()
                    .clone(),
            )),
            Preference::Interval(bounds) => {
                let (lower, upper) = similarity_bounds(&bounds.tightened(), self.spec.profile.negation);
                Ok(MatrixOutput::Bounds(vec![("lower", lower), ("upper", upper)]))
            }
        }
    }

    pub fn prefer(&self, p: &NamedProposition, q: &NamedProposition) -> Result<PreferenceAnswer> {
        let (pp, qq) = (&p.proposition, &q.proposition);
        let (necessary, possible, possible_sup_sup) = match &self.preference {
            Preference::Exact(rho) => (
                rho.prop_pref_lower(pp, qq)?,
                rho.prop_pref_upper(pp, qq)?,
                rho.prop_pref_upper_sup_sup(pp, qq)?,
            ),
            Preference::Interval(bounds) => {
                let tight = bounds.tightened();
                (
                    tight.prop_pref_lower(pp, qq)?,
                    tight.prop_pref_upper(pp, qq)?,
                    tight.upper().sup_sup(pp, qq)?,
                )
            }
        };
        Ok(PreferenceAnswer {
            p: p.text.clone(),
            q: q.text.clone(),
            necessary,
            possible,
            possible_sup_sup,
        })
    }

    /// Desirability bounds of `of`; with `given`, preference bounds of `of`
    /// over `given` and their resemblance.
    pub fn bounds(&self, of: &NamedProposition, given: Option<&NamedProposition>) -> Result<BoundsAnswer> {
        let Some(given) = given else {
            return Ok(BoundsAnswer {
                of: of.text.clone(),
                given: None,
                necessary: self.aggregate.necessary(&of.proposition)?,
                possible: self.aggregate.possible(&of.proposition)?,
                resemblance: None,
            });
        };
        let answer = self.prefer(of, given)?;
        let negation = self.spec.profile.negation;
        let resemblance = match &self.preference {
            Preference::Exact(rho) => relation_resemblance(rho, negation, &of.proposition, &given.proposition)?,
            Preference::Interval(bounds) => {
                interval_resemblance(&bounds.tightened(), negation, &of.proposition, &given.proposition)?
            }
        };
        Ok(BoundsAnswer {
            of: of.text.clone(),
            given: Some(given.text.clone()),
            necessary: answer.necessary,
            possible: answer.possible,
            resemblance: Some(resemblance),
        })
    }

    /// The connective profile over `grid`, then every derived relation.
    pub fn reports(&self, grid: Grid) -> Result<Vec<AxiomReport>> {
        let mut reports = vec![verify_profile(&self.spec.profile, grid)];
        match &self.preference {
            Preference::Exact(rho) => {
                let mut report = rho.verify_axioms();
                report.subject = format!("preference ({})", rho.conorm());
                reports.push(report);
                if let Some(s) = self.similarity()? {
                    let mut report = s.verify();
                    report.subject = format!("similarity ({})", s.tnorm());
                    report.flags.push(TRANSITIVITY_NOTE.to_string());
                    reports.push(report);
                }
            }
            Preference::Interval(bounds) => {
                let envelope =
                    PreferenceRelation::new(&self.spec.universe, bounds.conorm(), bounds.transitive_upper())?;
                let mut report = envelope.verify_axioms();
                report.subject = format!("transitive upper preference bound ({})", bounds.conorm());
                report.checks.retain(|c| c.axiom != "antisymmetry");
                report.flags.push(ENVELOPE_NOTE.to_string());
                reports.push(report);
            }
        }
        Ok(reports)
    }

    pub fn notes(&self) -> Vec<&'static str> {
        let mut notes = vec![SUP_NOTE, SUP_SUP_NOTE, RESEMBLANCE_NOTE];
        if matches!(self.preference, Preference::Interval(_)) {
            notes.push(DIAGONAL_NOTE);
        }
        notes
    }

    pub fn queries(&self) -> Result<Vec<QueryAnswer>> {
        self.spec
            .queries
            .iter()
            .map(|q| {
                Ok(match q {
                    Query::Rank => QueryAnswer::Rank(self.ranking()),
                    Query::Similarity => QueryAnswer::Similarity(self.similarity_matrix()?),
                    Query::Prefer { p, q } => QueryAnswer::Prefer(self.prefer(p, q)?),
                    Query::Bounds { of, given } => QueryAnswer::Bounds(self.bounds(of, given.as_ref())?),
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QueryAnswer {
    Rank(Vec<RankEntry>),
    Similarity(MatrixOutput),
    Prefer(PreferenceAnswer),
    Bounds(BoundsAnswer),
}
