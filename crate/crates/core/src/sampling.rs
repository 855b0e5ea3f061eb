//! Random fixtures for property tests and benchmarks.

use rand::Rng;

use crate::desirability::{DesirabilityInterval, DesirabilityMeasure};
use crate::matrix::PairMatrix;
use crate::norm::ConormFamily;
use crate::preference::{GeneratingFamily, PreferenceRelation};
use crate::worlds::Universe;

/// Uniform values in `[0, 1]`.
pub fn random_measure<R: Rng + ?Sized>(rng: &mut R, universe: &Universe) -> DesirabilityMeasure {
    let values = (0..universe.len()).map(|_| rng.gen::<f64>()).collect();
    DesirabilityMeasure::from_raw(universe, values)
}

/// A relation satisfying all three preference axioms, built by regenerating
/// from one to three random measures.
pub fn random_relation<R: Rng + ?Sized>(rng: &mut R, universe: &Universe, conorm: ConormFamily) -> PreferenceRelation {
    loop {
        let k = rng.gen_range(1..=3);
        let generators = (0..k).map(|_| random_measure(rng, universe)).collect();
        let family = GeneratingFamily::new(universe, generators).expect("same universe");
        let rho = family.regenerate(conorm).expect("nonempty family");
        if rho.verify_axioms().all_pass() {
            return rho;
        }
    }
}

/// An interval with independently drawn bounds, sorted per world.
pub fn random_interval<R: Rng + ?Sized>(rng: &mut R, universe: &Universe) -> DesirabilityInterval {
    let (mut lower, mut upper) = (Vec::new(), Vec::new());
    for _ in 0..universe.len() {
        let a: f64 = rng.gen();
        let b: f64 = rng.gen();
        lower.push(a.min(b));
        upper.push(a.max(b));
    }
    DesirabilityInterval::new(
        DesirabilityMeasure::from_raw(universe, lower),
        DesirabilityMeasure::from_raw(universe, upper),
    )
    .expect("sorted bounds")
}

/// A measure drawn uniformly inside an interval.
pub fn sample_within<R: Rng + ?Sized>(rng: &mut R, interval: &DesirabilityInterval) -> DesirabilityMeasure {
    let values = interval
        .lower()
        .values()
        .iter()
        .zip(interval.upper().values())
        .map(|(&lo, &hi)| lo + (hi - lo) * rng.gen::<f64>())
        .map(|v| v.clamp(0.0, 1.0))
        .collect();
    DesirabilityMeasure::from_raw(interval.universe(), values)
}

/// Uniform off-diagonal entries with a zero diagonal.
pub fn random_upper_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PairMatrix {
    let mut m = PairMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, rng.gen());
            }
        }
    }
    m
}
