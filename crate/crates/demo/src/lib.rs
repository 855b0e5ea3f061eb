//! Browser bindings for three interactive views: connective curves,
//! preference and similarity from a desirability vector, and the
//! transitive envelope of an upper preference bound.
//!
//! Each binding wraps a plain function with `String` errors so the logic is
//! testable natively.

use desirability::{
    transitive_envelope, ConormFamily, DesirabilityMeasure, NormProfile, PairMatrix, PreferenceRelation,
    SimilarityRelation, Universe,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn profile(name: &str) -> Result<NormProfile, String> {
    name.parse()
}

/// Samples `op(x, fixed)` at `samples` evenly spaced points of `[0, 1]`.
/// `op` is one of `and`, `or`, `implies`, `difference`.
pub fn curve(profile_name: &str, op: &str, fixed: f64, samples: usize) -> Result<Vec<f64>, String> {
    let p = profile(profile_name)?;
    if !(0.0..=1.0).contains(&fixed) {
        return Err(format!("{fixed} is outside [0, 1]"));
    }
    if samples < 2 {
        return Err("need at least two samples".into());
    }
    (0..samples)
        .map(|i| {
            let x = i as f64 / (samples - 1) as f64;
            let y = match op {
                "and" => p.tnorm(x, fixed),
                "or" => p.conorm(x, fixed),
                "implies" => p.residuum(x, fixed),
                "difference" => p.conorm_pseudoinverse(x, fixed),
                other => return Err(format!("unknown operation `{other}`")),
            };
            y.map_err(|e| e.to_string())
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct Relations {
    pub preference: Vec<Vec<f64>>,
    pub similarity: Vec<Vec<f64>>,
    pub ranking: Vec<usize>,
    pub axioms_pass: bool,
}

/// Preference and similarity induced by a desirability vector under the
/// profile's conorm, plus the ranking of worlds.
pub fn relations(values: &[f64], profile_name: &str) -> Result<Relations, String> {
    let p = profile(profile_name)?;
    let u = Universe::of_size(values.len());
    let d = DesirabilityMeasure::new(&u, values.to_vec()).map_err(|e| e.to_string())?;
    let rho = PreferenceRelation::from_desirability(&d, p.conorm);
    let s = SimilarityRelation::from_preference(&rho, p.negation).map_err(|e| e.to_string())?;
    let mut ranking: Vec<usize> = (0..values.len()).collect();
    ranking.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    Ok(Relations {
        preference: rho.matrix().rows(),
        similarity: s.matrix().rows(),
        ranking,
        axioms_pass: rho.verify_axioms().all_pass() && s.verify().all_pass(),
    })
}

/// Transitive envelope of a row-major `n x n` upper bound with zero diagonal.
pub fn envelope(upper: &[f64], conorm: &str) -> Result<Vec<f64>, String> {
    let n = (upper.len() as f64).sqrt().round() as usize;
    if n * n != upper.len() {
        return Err(format!("{} entries do not form a square matrix", upper.len()));
    }
    let family = ConormFamily::ALL
        .into_iter()
        .find(|c| c.name() == conorm)
        .ok_or_else(|| format!("unknown conorm `{conorm}`"))?;
    let m = PairMatrix::new(n, upper.to_vec()).map_err(|e| e.to_string())?;
    let env = transitive_envelope(&m, family).map_err(|e| e.to_string())?;
    Ok(env.data().to_vec())
}

#[wasm_bindgen(js_name = curve)]
pub fn curve_js(profile: &str, op: &str, fixed: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    curve(profile, op, fixed, samples).map_err(|e| JsError::new(&e))
}

/// Returns the relations as a JSON string.
#[wasm_bindgen(js_name = relations)]
pub fn relations_js(values: &[f64], profile: &str) -> Result<String, JsError> {
    let r = relations(values, profile).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&r).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = envelope)]
pub fn envelope_js(upper: &[f64], conorm: &str) -> Result<Vec<f64>, JsError> {
    envelope(upper, conorm).map_err(|e| JsError::new(&e))
}
