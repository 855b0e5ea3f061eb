//! Triangular norms, conorms, strong negation and their adjoints.
//!
//! Three matched De Morgan triples ship: minimum/maximum, product/probabilistic
//! sum and bounded difference/bounded sum (Łukasiewicz), all with the standard
//! negation `1 - x`. A [`NormProfile`] may mix a t-norm from one triple with a
//! conorm from another; [`verify_profile`] flags such profiles and skips the De
//! Morgan check for them.
//!
//! Residua and conorm pseudoinverses are closed forms per family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, Error, Result};
use crate::report::{AxiomReport, Tally, Witness};

/// Absolute tolerance for every equality and inequality on unit values.
pub const TOLERANCE: f64 = 1e-9;

#[inline]
pub(crate) fn leq(a: f64, b: f64) -> bool {
    a <= b + TOLERANCE
}

#[inline]
pub(crate) fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOLERANCE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TNormFamily {
    Minimum,
    Product,
    /// Łukasiewicz t-norm `max(0, a + b - 1)`.
    BoundedDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConormFamily {
    Maximum,
    ProbabilisticSum,
    /// Łukasiewicz conorm `min(1, a + b)`.
    BoundedSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NegationFamily {
    #[default]
    Standard,
}

impl TNormFamily {
    pub const ALL: [TNormFamily; 3] = [Self::Minimum, Self::Product, Self::BoundedDifference];

    /// Assumes `a, b` in `[0, 1]`.
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            Self::Minimum => a.min(b),
            Self::Product => a * b,
            Self::BoundedDifference => (a + b - 1.0).max(0.0),
        }
    }

    /// `sup { c : T(a, c) <= b }`. Assumes `a, b` in `[0, 1]`.
    pub fn residuum(self, a: f64, b: f64) -> f64 {
        if a <= b {
            return 1.0;
        }
        match self {
            Self::Minimum => b,
            // a > b >= 0, so no division by zero
            Self::Product => b / a,
            Self::BoundedDifference => (1.0 - a + b).min(1.0),
        }
    }

    /// The conorm paired with this t-norm under the standard negation.
    pub fn dual(self) -> ConormFamily {
        match self {
            Self::Minimum => ConormFamily::Maximum,
            Self::Product => ConormFamily::ProbabilisticSum,
            Self::BoundedDifference => ConormFamily::BoundedSum,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Minimum => "minimum",
            Self::Product => "product",
            Self::BoundedDifference => "bounded_difference",
        }
    }
}

impl ConormFamily {
    pub const ALL: [ConormFamily; 3] = [Self::Maximum, Self::ProbabilisticSum, Self::BoundedSum];

    /// Assumes `a, b` in `[0, 1]`.
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            Self::Maximum => a.max(b),
            Self::ProbabilisticSum => (a + b - a * b).clamp(0.0, 1.0),
            Self::BoundedSum => (a + b).min(1.0),
        }
    }

    /// `inf { c : S(b, c) >= a }`. Assumes `a, b` in `[0, 1]`.
    pub fn pseudoinverse(self, a: f64, b: f64) -> f64 {
        if b >= a {
            return 0.0;
        }
        match self {
            Self::Maximum => a,
            // b < a <= 1, so 1 - b > 0
            Self::ProbabilisticSum => ((a - b) / (1.0 - b)).min(1.0),
            Self::BoundedSum => a - b,
        }
    }

    pub fn dual(self) -> TNormFamily {
        match self {
            Self::Maximum => TNormFamily::Minimum,
            Self::ProbabilisticSum => TNormFamily::Product,
            Self::BoundedSum => TNormFamily::BoundedDifference,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Maximum => "maximum",
            Self::ProbabilisticSum => "probabilistic_sum",
            Self::BoundedSum => "bounded_sum",
        }
    }
}

impl NegationFamily {
    pub const ALL: [NegationFamily; 1] = [Self::Standard];

    pub fn apply(self, a: f64) -> f64 {
        match self {
            Self::Standard => 1.0 - a,
        }
    }

    pub fn name(self) -> &'static str {
        "standard"
    }
}

impl fmt::Display for TNormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for ConormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The five connectives every combinator consults, unchecked.
///
/// Implemented by [`NormProfile`]; test fixtures implement it to plant axiom
/// violations for [`verify_connectives`].
pub trait Connectives {
    fn conjunction(&self, a: f64, b: f64) -> f64;
    fn disjunction(&self, a: f64, b: f64) -> f64;
    fn complement(&self, a: f64) -> f64;
    /// Residuum of the conjunction.
    fn implication(&self, a: f64, b: f64) -> f64;
    /// Pseudoinverse of the disjunction.
    fn difference(&self, a: f64, b: f64) -> f64;
}

/// A t-norm, t-conorm and strong negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormProfile {
    pub tnorm: TNormFamily,
    pub conorm: ConormFamily,
    #[serde(default)]
    pub negation: NegationFamily,
}

impl NormProfile {
    /// Names accepted by [`FromStr`].
    pub const NAMES: [&'static str; 3] = ["min", "product", "lukasiewicz"];

    pub const fn new(tnorm: TNormFamily, conorm: ConormFamily) -> Self {
        Self {
            tnorm,
            conorm,
            negation: NegationFamily::Standard,
        }
    }

    pub const fn min() -> Self {
        Self::new(TNormFamily::Minimum, ConormFamily::Maximum)
    }

    pub const fn product() -> Self {
        Self::new(TNormFamily::Product, ConormFamily::ProbabilisticSum)
    }

    pub const fn lukasiewicz() -> Self {
        Self::new(TNormFamily::BoundedDifference, ConormFamily::BoundedSum)
    }

    /// The three matched triples.
    pub fn matched() -> [NormProfile; 3] {
        [Self::min(), Self::product(), Self::lukasiewicz()]
    }

    /// The triple whose t-norm is dual to `conorm`.
    pub fn matched_for(conorm: ConormFamily) -> Self {
        Self::new(conorm.dual(), conorm)
    }

    pub fn is_matched(&self) -> bool {
        self.tnorm.dual() == self.conorm
    }

    pub fn tnorm(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.tnorm.apply(check_unit(a)?, check_unit(b)?))
    }

    pub fn conorm(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.conorm.apply(check_unit(a)?, check_unit(b)?))
    }

    pub fn negate(&self, a: f64) -> Result<f64> {
        Ok(self.negation.apply(check_unit(a)?))
    }

    pub fn residuum(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.tnorm.residuum(check_unit(a)?, check_unit(b)?))
    }

    pub fn conorm_pseudoinverse(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.conorm.pseudoinverse(check_unit(a)?, check_unit(b)?))
    }
}

impl Default for NormProfile {
    fn default() -> Self {
        Self::lukasiewicz()
    }
}

impl Connectives for NormProfile {
    fn conjunction(&self, a: f64, b: f64) -> f64 {
        self.tnorm.apply(a, b)
    }
    fn disjunction(&self, a: f64, b: f64) -> f64 {
        self.conorm.apply(a, b)
    }
    fn complement(&self, a: f64) -> f64 {
        self.negation.apply(a)
    }
    fn implication(&self, a: f64, b: f64) -> f64 {
        self.tnorm.residuum(a, b)
    }
    fn difference(&self, a: f64, b: f64) -> f64 {
        self.conorm.pseudoinverse(a, b)
    }
}

impl FromStr for NormProfile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "min" => Ok(Self::min()),
            "product" => Ok(Self::product()),
            "lukasiewicz" => Ok(Self::lukasiewicz()),
            other => Err(format!(
                "unknown profile `{other}` (expected one of: {})",
                Self::NAMES.join(", ")
            )),
        }
    }
}

impl fmt::Display for NormProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.tnorm, self.conorm, self.negation.name())
    }
}

/// The evaluation grid `{0, 1/n, ..., 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    denominator: u32,
}

impl Grid {
    pub fn new(denominator: u32) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidGrid);
        }
        Ok(Self { denominator })
    }

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.denominator;
        (0..=n).map(|k| k as f64 / n as f64).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    /// Parses `1/N`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let denominator = s
            .trim()
            .strip_prefix("1/")
            .and_then(|d| d.trim().parse::<u32>().ok())
            .ok_or_else(|| format!("grid step must look like 1/N, got `{s}`"))?;
        Grid::new(denominator).map_err(|e| e.to_string())
    }
}

/// Checks the connective axioms of `c` exhaustively over `grid`.
///
/// The De Morgan pairing is not included; see [`verify_profile`].
pub fn verify_connectives<C: Connectives>(c: &C, grid: Grid, subject: &str) -> AxiomReport {
    let pts = grid.points();
    let mut report = AxiomReport::new(subject);
    let v = |xs: &[f64]| Witness::Values(xs.to_vec());

    let conjunction = |a, b| c.conjunction(a, b);
    let disjunction = |a, b| c.disjunction(a, b);
    // (operation, identity element, axiom names)
    type Binary<'a> = (&'a dyn Fn(f64, f64) -> f64, f64, [&'static str; 4]);
    let binary: [Binary<'_>; 2] = [
        (
            &conjunction,
            1.0,
            [
                "tnorm_commutativity",
                "tnorm_associativity",
                "tnorm_monotonicity",
                "tnorm_identity",
            ],
        ),
        (
            &disjunction,
            0.0,
            [
                "conorm_commutativity",
                "conorm_associativity",
                "conorm_monotonicity",
                "conorm_identity",
            ],
        ),
    ];
    for (op, unit, [comm, assoc, mono, ident]) in binary {
        let mut comm = Tally::new(comm);
        let mut assoc = Tally::new(assoc);
        let mut mono = Tally::new(mono);
        let mut ident = Tally::new(ident);
        for &a in &pts {
            ident.expect(close(op(unit, a), a) && close(op(a, unit), a), || v(&[unit, a]));
            for &b in &pts {
                comm.expect(close(op(a, b), op(b, a)), || v(&[a, b]));
                for &x in &pts {
                    assoc.expect(close(op(op(a, b), x), op(a, op(b, x))), || v(&[a, b, x]));
                    if a <= b {
                        mono.expect(leq(op(a, x), op(b, x)) && leq(op(x, a), op(x, b)), || v(&[a, b, x]));
                    }
                }
            }
        }
        report.push(comm);
        report.push(assoc);
        report.push(mono);
        report.push(ident);
    }

    let mut boundary = Tally::new("negation_boundary");
    boundary.expect(close(c.complement(0.0), 1.0), || v(&[0.0]));
    boundary.expect(close(c.complement(1.0), 0.0), || v(&[1.0]));
    let mut decreasing = Tally::new("negation_strictly_decreasing");
    let mut involution = Tally::new("negation_involution");
    for (i, &a) in pts.iter().enumerate() {
        involution.expect(close(c.complement(c.complement(a)), a), || v(&[a]));
        if let Some(&b) = pts.get(i + 1) {
            decreasing.expect(c.complement(a) > c.complement(b), || v(&[a, b]));
        }
    }
    report.push(boundary);
    report.push(decreasing);
    report.push(involution);

    let mut residuation = Tally::new("residuation_adjunction");
    let mut pseudo = Tally::new("pseudoinverse_adjunction");
    for &a in &pts {
        for &b in &pts {
            let r = c.implication(a, b);
            let d = c.difference(a, b);
            for &x in &pts {
                // T(a, x) <= b  iff  x <= R(a, b)
                residuation.expect(leq(c.conjunction(a, x), b) == leq(x, r), || v(&[a, b, x]));
                // D(a, b) <= x  iff  a <= S(b, x)
                pseudo.expect(leq(d, x) == leq(a, c.disjunction(b, x)), || v(&[a, b, x]));
            }
        }
    }
    report.push(residuation);
    report.push(pseudo);

    let mut boolean = Tally::new("boolean_degeneration");
    for a in [false, true] {
        let fa = f64::from(u8::from(a));
        boolean.expect(close(c.complement(fa), f64::from(u8::from(!a))), || v(&[fa]));
        for b in [false, true] {
            let fb = f64::from(u8::from(b));
            let expect = |x: bool| f64::from(u8::from(x));
            let ok = close(c.conjunction(fa, fb), expect(a && b))
                && close(c.disjunction(fa, fb), expect(a || b))
                && close(c.implication(fa, fb), expect(!a || b));
            boolean.expect(ok, || v(&[fa, fb]));
        }
    }
    report.push(boolean);

    report
}

/// Checks every connective axiom of `profile` over `grid`, plus the De Morgan
/// pairing when the profile is a matched triple.
pub fn verify_profile(profile: &NormProfile, grid: Grid) -> AxiomReport {
    let subject = format!("profile {profile} on grid 1/{}", grid.denominator());
    let mut report = verify_connectives(profile, grid, &subject);
    if profile.is_matched() {
        report.push(de_morgan_tally(profile, grid));
    } else {
        report.flag(format!(
            "mixed profile: t-norm {} is not the De Morgan dual of conorm {}; pairing not asserted",
            profile.tnorm, profile.conorm
        ));
    }
    report
}

fn de_morgan_tally<C: Connectives>(c: &C, grid: Grid) -> Tally {
    let pts = grid.points();
    let mut tally = Tally::new("de_morgan");
    for &a in &pts {
        for &b in &pts {
            let lhs = c.complement(c.conjunction(a, b));
            let rhs = c.disjunction(c.complement(a), c.complement(b));
            tally.expect(close(lhs, rhs), || Witness::Values(vec![a, b]));
        }
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: f64, expected: f64) {
        assert!(close(actual, expected), "expected {expected}, got {actual}");
    }

    #[test]
    fn tnorm_values() {
        let min = NormProfile::min();
        assert_close(min.tnorm(0.3, 0.8).unwrap(), 0.3);
        assert_close(NormProfile::lukasiewicz().tnorm(0.7, 0.5).unwrap(), 0.2);
        for p in NormProfile::matched() {
            for x in [0.0, 0.25, 0.6, 1.0] {
                assert_close(p.tnorm(1.0, x).unwrap(), x);
            }
        }
    }

    #[test]
    fn conorm_values() {
        for p in NormProfile::matched() {
            for x in [0.0, 0.25, 0.6, 1.0] {
                assert_close(p.conorm(0.0, x).unwrap(), x);
            }
        }
        assert_close(NormProfile::lukasiewicz().conorm(0.7, 0.5).unwrap(), 1.0);
        assert_close(NormProfile::product().conorm(0.5, 0.5).unwrap(), 0.75);
    }

    #[test]
    fn negation_values() {
        let p = NormProfile::default();
        assert_close(p.negate(0.0).unwrap(), 1.0);
        assert_close(p.negate(0.3).unwrap(), 0.7);
        assert_close(p.negate(p.negate(0.42).unwrap()).unwrap(), 0.42);
    }

    #[test]
    fn residuum_values() {
        for p in NormProfile::matched() {
            assert_eq!(p.residuum(0.3, 0.3).unwrap(), 1.0);
            assert_eq!(p.residuum(0.2, 0.9).unwrap(), 1.0);
        }
        assert_close(NormProfile::product().residuum(0.8, 0.4).unwrap(), 0.5);
        assert_close(NormProfile::lukasiewicz().residuum(0.9, 0.6).unwrap(), 0.7);
        assert_close(NormProfile::min().residuum(0.9, 0.6).unwrap(), 0.6);
    }

    #[test]
    fn pseudoinverse_values() {
        for p in NormProfile::matched() {
            assert_eq!(p.conorm_pseudoinverse(0.4, 0.4).unwrap(), 0.0);
            assert_eq!(p.conorm_pseudoinverse(0.2, 0.9).unwrap(), 0.0);
        }
        assert_close(NormProfile::lukasiewicz().conorm_pseudoinverse(0.9, 0.6).unwrap(), 0.3);
        assert_close(NormProfile::product().conorm_pseudoinverse(1.0, 0.5).unwrap(), 1.0);
        // b = 1 is guarded by b >= a
        assert_eq!(NormProfile::product().conorm_pseudoinverse(1.0, 1.0).unwrap(), 0.0);
        assert_close(NormProfile::min().conorm_pseudoinverse(0.9, 0.6).unwrap(), 0.9);
    }

    #[test]
    fn out_of_range_inputs_are_rejected() {
        let p = NormProfile::min();
        assert!(matches!(p.tnorm(1.2, 0.1), Err(Error::OutOfRange { .. })));
        assert!(p.conorm(0.1, -0.01).is_err());
        assert!(p.negate(f64::NAN).is_err());
        assert!(p.residuum(2.0, 0.0).is_err());
        assert!(p.conorm_pseudoinverse(0.0, 1.5).is_err());
    }

    #[test]
    fn matched_profiles_pass_on_sixteenths() {
        let grid = Grid::new(16).unwrap();
        for p in NormProfile::matched() {
            let report = verify_profile(&p, grid);
            assert!(report.all_pass(), "{report}");
            assert!(report.passes("de_morgan"));
            assert!(report.flags.is_empty());
        }
    }

    #[test]
    fn mixed_profile_is_flagged_not_failed() {
        let p = NormProfile::new(TNormFamily::Minimum, ConormFamily::BoundedSum);
        let report = verify_profile(&p, Grid::new(8).unwrap());
        assert!(report.all_pass(), "{report}");
        assert!(report.check("de_morgan").is_none());
        assert_eq!(report.flags.len(), 1);
    }

    struct BrokenResiduum(NormProfile);

    impl Connectives for BrokenResiduum {
        fn conjunction(&self, a: f64, b: f64) -> f64 {
            self.0.conjunction(a, b)
        }
        fn disjunction(&self, a: f64, b: f64) -> f64 {
            self.0.disjunction(a, b)
        }
        fn complement(&self, a: f64) -> f64 {
            self.0.complement(a)
        }
        fn implication(&self, a: f64, b: f64) -> f64 {
            // Gödel residuum paired with the product t-norm
            if a <= b {
                1.0
            } else {
                b
            }
        }
        fn difference(&self, a: f64, b: f64) -> f64 {
            self.0.difference(a, b)
        }
    }

    #[test]
    fn planted_violation_is_named() {
        let broken = BrokenResiduum(NormProfile::product());
        let report = verify_connectives(&broken, Grid::new(16).unwrap(), "broken");
        let failing: Vec<_> = report.failing().map(|c| c.axiom.as_str()).collect();
        assert_eq!(failing, ["residuation_adjunction"]);
        assert!(report.check("residuation_adjunction").unwrap().witness.is_some());
    }

    #[test]
    fn grid_parses_unit_fractions() {
        assert_eq!("1/16".parse::<Grid>().unwrap().denominator(), 16);
        assert!("2/16".parse::<Grid>().is_err());
        assert!("1/0".parse::<Grid>().is_err());
        assert_eq!(Grid::new(4).unwrap().points(), [0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn profile_names() {
        assert_eq!(
            "lukasiewicz".parse::<NormProfile>().unwrap(),
            NormProfile::lukasiewicz()
        );
        let err = "godel".parse::<NormProfile>().unwrap_err();
        assert!(err.contains("min, product, lukasiewicz"));
    }
}
