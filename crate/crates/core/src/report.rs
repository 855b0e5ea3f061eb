//! Axiom reports shared by the connective, preference and similarity checkers.
//!
//! A report never fails as a whole; each axiom gets a pass/fail entry and the
//! first counterexample found is kept as a witness.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A counterexample: either grid values (connective axioms) or world ids
/// (relation axioms).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Worlds(Vec<usize>),
    Values(Vec<f64>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Worlds(ids) => write!(f, "worlds {ids:?}"),
            Witness::Values(vals) => write!(f, "values {vals:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of violating instances found (0 when passing).
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AxiomReport {
    pub subject: String,
    pub checks: Vec<AxiomCheck>,
    /// Non-failing remarks, e.g. a mixed norm profile or a reading of an
    /// ambiguous convention.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn passes(&self, axiom: &str) -> bool {
        self.check(axiom).is_some_and(|c| c.pass)
    }

    pub fn failing(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub(crate) fn push(&mut self, tally: Tally) {
        self.checks.push(tally.finish());
    }

    pub(crate) fn flag(&mut self, note: impl Into<String>) {
        self.flags.push(note.into());
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            write!(f, "  {status} {}", c.axiom)?;
            if let Some(w) = &c.witness {
                write!(f, " ({} violations, first at {w})", c.violations)?;
            }
            writeln!(f)?;
        }
        for flag in &self.flags {
            writeln!(f, "  note: {flag}")?;
        }
        Ok(())
    }
}

/// Accumulates violations of one axiom.
pub(crate) struct Tally {
    axiom: &'static str,
    witness: Option<Witness>,
    violations: usize,
}

impl Tally {
    pub(crate) fn new(axiom: &'static str) -> Self {
        Self {
            axiom,
            witness: None,
            violations: 0,
        }
    }

    /// Records a violation unless `ok`; the witness closure runs only for the
    /// first violation.
    pub(crate) fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        if !ok {
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
            self.violations += 1;
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            axiom: self.axiom.to_string(),
            pass: self.violations == 0,
            witness: self.witness,
            violations: self.violations,
        }
    }
}
