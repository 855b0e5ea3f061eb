//! Problem documents: JSON ingestion and validation.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;

use desirability::{
    eval_formula, ConormFamily, DesirabilityInterval, DesirabilityMeasure, Error as CoreError, Formula, NegationFamily,
    NormProfile, Proposition, TNormFamily, Universe,
};
use serde::Deserialize;

use crate::formula::parse_formula;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecError {
    /// The document could not be read or is not valid JSON of the expected shape.
    Parse(String),
    /// The document is well formed but breaks an invariant; `path` names the
    /// offending field, e.g. `constraints[1].values`.
    Validation { path: String, message: String },
}

impl SpecError {
    pub fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse(msg) => write!(f, "parse error: {msg}"),
            SpecError::Validation { path, message } => write!(f, "invalid {path}: {message}"),
        }
    }
}

impl std::error::Error for SpecError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(default)]
    description: Option<String>,
    atoms: Vec<String>,
    #[serde(default)]
    worlds: Option<Vec<BTreeMap<String, bool>>>,
    #[serde(default)]
    profile: Option<RawProfile>,
    constraints: Vec<RawConstraint>,
    aggregate: String,
    #[serde(default)]
    queries: Vec<RawQuery>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawProfile {
    Name(String),
    Families {
        tnorm: String,
        conorm: String,
        #[serde(default)]
        negation: Option<String>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawConstraint {
    Crisp {
        #[serde(default)]
        name: Option<String>,
        formula: String,
    },
    Table {
        #[serde(default)]
        name: Option<String>,
        values: Vec<f64>,
    },
    Interval {
        #[serde(default)]
        name: Option<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawQuery {
    Rank,
    Prefer {
        p: String,
        q: String,
    },
    Similarity,
    Bounds {
        of: String,
        #[serde(default)]
        given: Option<String>,
    },
}

/// A graded constraint, exact or known only within bounds.
#[derive(Debug, Clone, PartialEq)]
pub enum Grade {
    Exact(DesirabilityMeasure),
    Interval(DesirabilityInterval),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub grade: Grade,
}

/// A proposition together with the text it was parsed from.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedProposition {
    pub text: String,
    pub proposition: Proposition,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Query {
    Rank,
    Prefer {
        p: NamedProposition,
        q: NamedProposition,
    },
    Similarity,
    Bounds {
        of: NamedProposition,
        given: Option<NamedProposition>,
    },
}

/// A validated problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub description: Option<String>,
    pub universe: Universe,
    pub profile: NormProfile,
    pub constraints: Vec<Constraint>,
    pub aggregate: Formula,
    pub aggregate_text: String,
    pub queries: Vec<Query>,
}

impl ProblemSpec {
    pub fn constraint(&self, name: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.name == name)
    }

    /// Parses a formula over the atoms into a proposition; `path` labels errors.
    pub fn proposition(&self, text: &str, path: &str) -> Result<NamedProposition, SpecError> {
        proposition(&self.universe, text, path)
    }
}

pub fn load_spec(path: &Path) -> Result<ProblemSpec, SpecError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| SpecError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec, SpecError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
    validate(raw)
}

/// Resolves a profile name (`min`, `product`, `lukasiewicz`).
pub fn profile_by_name(name: &str, path: &str) -> Result<NormProfile, SpecError> {
    name.parse::<NormProfile>().map_err(|msg| SpecError::at(path, msg))
}

fn family<T: Copy>(all: &[T], name_of: fn(T) -> &'static str, wanted: &str, path: &str) -> Result<T, SpecError> {
    all.iter().copied().find(|&f| name_of(f) == wanted).ok_or_else(|| {
        let names: Vec<&str> = all.iter().map(|&f| name_of(f)).collect();
        SpecError::at(
            path,
            format!("unknown family `{wanted}` (expected one of: {})", names.join(", ")),
        )
    })
}

fn resolve_profile(raw: Option<RawProfile>) -> Result<NormProfile, SpecError> {
    match raw {
        None => Ok(NormProfile::default()),
        Some(RawProfile::Name(name)) => profile_by_name(&name, "profile"),
        Some(RawProfile::Families {
            tnorm,
            conorm,
            negation,
        }) => Ok(NormProfile {
            tnorm: family(&TNormFamily::ALL, TNormFamily::name, &tnorm, "profile.tnorm")?,
            conorm: family(&ConormFamily::ALL, ConormFamily::name, &conorm, "profile.conorm")?,
            negation: family(
                &NegationFamily::ALL,
                NegationFamily::name,
                negation.as_deref().unwrap_or("standard"),
                "profile.negation",
            )?,
        }),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn build_universe(atoms: &[String], worlds: Option<&[BTreeMap<String, bool>]>) -> Result<Universe, SpecError> {
    for (i, atom) in atoms.iter().enumerate() {
        if !is_identifier(atom) {
            return Err(SpecError::at(
                format!("atoms[{i}]"),
                format!("`{atom}` is not a valid name"),
            ));
        }
    }
    if worlds.is_some_and(<[_]>::is_empty) {
        return Err(SpecError::at("worlds", "at least one world is required"));
    }
    let names: Vec<&str> = atoms.iter().map(String::as_str).collect();
    Universe::build(&names, worlds).map_err(|e| match e {
        CoreError::MissingAtom { world, .. } => SpecError::at(format!("worlds[{world}]"), e.to_string()),
        CoreError::UnknownAtom(ref atom) => {
            let index = worlds
                .and_then(|ws| ws.iter().position(|w| w.contains_key(atom)))
                .unwrap_or(0);
            SpecError::at(format!("worlds[{index}]"), e.to_string())
        }
        other => SpecError::at("atoms", other.to_string()),
    })
}

fn proposition(universe: &Universe, text: &str, path: &str) -> Result<NamedProposition, SpecError> {
    let formula = parse_formula(text).map_err(|e| SpecError::at(path, e.to_string()))?;
    let proposition = eval_formula(universe, &formula).map_err(|e| SpecError::at(path, e.to_string()))?;
    Ok(NamedProposition {
        text: text.to_string(),
        proposition,
    })
}

fn table(universe: &Universe, values: Vec<f64>, path: &str) -> Result<DesirabilityMeasure, SpecError> {
    if values.len() != universe.len() {
        return Err(SpecError::at(
            path,
            format!(
                "expected {} values (one per world), got {}",
                universe.len(),
                values.len()
            ),
        ));
    }
    if let Some(i) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
        return Err(SpecError::at(
            format!("{path}[{i}]"),
            format!("{} is outside [0, 1]", values[i]),
        ));
    }
    DesirabilityMeasure::new(universe, values).map_err(|e| SpecError::at(path, e.to_string()))
}

fn validate(raw: RawSpec) -> Result<ProblemSpec, SpecError> {
    let universe = build_universe(&raw.atoms, raw.worlds.as_deref())?;
    let profile = resolve_profile(raw.profile)?;
    if raw.constraints.is_empty() {
        return Err(SpecError::at("constraints", "at least one constraint is required"));
    }

    let mut constraints = Vec::with_capacity(raw.constraints.len());
    let mut seen = HashSet::new();
    for (i, c) in raw.constraints.into_iter().enumerate() {
        let at = |field: &str| format!("constraints[{i}].{field}");
        let (name, grade) = match c {
            RawConstraint::Crisp { name, formula } => {
                let p = proposition(&universe, &formula, &at("formula"))?;
                (name, Grade::Exact(DesirabilityMeasure::crisp(&p.proposition)))
            }
            RawConstraint::Table { name, values } => (name, Grade::Exact(table(&universe, values, &at("values"))?)),
            RawConstraint::Interval { name, lower, upper } => {
                let lo = table(&universe, lower, &at("lower"))?;
                let hi = table(&universe, upper, &at("upper"))?;
                let interval = DesirabilityInterval::new(lo, hi).map_err(|e| match e {
                    CoreError::BoundOrder { index, .. } => {
                        SpecError::at(format!("{}[{index}]", at("lower")), e.to_string())
                    }
                    other => SpecError::at(format!("constraints[{i}]"), other.to_string()),
                })?;
                (name, Grade::Interval(interval))
            }
        };
        let name = name.unwrap_or_else(|| format!("c{i}"));
        if !is_identifier(&name) {
            return Err(SpecError::at(at("name"), format!("`{name}` is not a valid name")));
        }
        if !seen.insert(name.clone()) {
            return Err(SpecError::at(at("name"), format!("duplicate constraint name `{name}`")));
        }
        constraints.push(Constraint { name, grade });
    }

    let aggregate = parse_formula(&raw.aggregate).map_err(|e| SpecError::at("aggregate", e.to_string()))?;
    if let Some(unknown) = aggregate.atoms().into_iter().find(|n| !seen.contains(*n)) {
        let known: Vec<&str> = constraints.iter().map(|c| c.name.as_str()).collect();
        return Err(SpecError::at(
            "aggregate",
            format!("unknown constraint `{unknown}` (defined: {})", known.join(", ")),
        ));
    }

    let mut queries = Vec::with_capacity(raw.queries.len());
    for (i, q) in raw.queries.into_iter().enumerate() {
        let at = |field: &str| format!("queries[{i}].{field}");
        queries.push(match q {
            RawQuery::Rank => Query::Rank,
            RawQuery::Similarity => Query::Similarity,
            RawQuery::Prefer { p, q } => Query::Prefer {
                p: nonempty(proposition(&universe, &p, &at("p"))?, &at("p"))?,
                q: nonempty(proposition(&universe, &q, &at("q"))?, &at("q"))?,
            },
            RawQuery::Bounds { of, given } => Query::Bounds {
                of: nonempty(proposition(&universe, &of, &at("of"))?, &at("of"))?,
                given: given
                    .map(|g| proposition(&universe, &g, &at("given")).and_then(|p| nonempty(p, &at("given"))))
                    .transpose()?,
            },
        });
    }

    Ok(ProblemSpec {
        description: raw.description,
        universe,
        profile,
        constraints,
        aggregate,
        aggregate_text: raw.aggregate,
        queries,
    })
}

/// Rejects propositions with no worlds; bounds over them are undefined.
pub fn nonempty(p: NamedProposition, path: &str) -> Result<NamedProposition, SpecError> {
    if p.proposition.is_empty() {
        Err(SpecError::at(path, format!("`{}` holds in no world", p.text)))
    } else {
        Ok(p)
    }
}
