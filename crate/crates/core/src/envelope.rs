//! Greatest conorm-transitive function below an upper bound.
//!
//! The semiring is `([0, 1], min, S)`: a chain `w = v0, v1, ..., vk = w'`
//! costs `S(x(v0, v1), ..., x(v(k-1), vk))` and the envelope keeps the cheapest
//! chain for every pair. Conorms only grow along a chain, so cycles never
//! help and Floyd-Warshall relaxation reaches the fixpoint in one sweep. The
//! sweep is repeated until nothing changes so that rounding cannot leave a
//! pair short of transitive.

use crate::error::{Error, Result};
use crate::matrix::PairMatrix;
use crate::norm::{ConormFamily, TOLERANCE};

const MAX_SWEEPS: usize = 8;

/// Returns the largest `S`-transitive matrix that is pointwise `<= upper`.
///
/// `upper` must have a zero diagonal.
pub fn transitive_envelope(upper: &PairMatrix, conorm: ConormFamily) -> Result<PairMatrix> {
    let n = upper.size();
    if let Some(w) = (0..n).find(|&w| upper.get(w, w).abs() > TOLERANCE) {
        return Err(Error::NonzeroDiagonal(w));
    }
    let mut m = upper.clone();
    for w in 0..n {
        m.set(w, w, 0.0);
    }
    for _ in 0..MAX_SWEEPS {
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                let ik = m.get(i, k);
                if ik >= 1.0 {
                    // S(1, x) = 1 can never improve anything
                    continue;
                }
                for j in 0..n {
                    let via = conorm.apply(ik, m.get(k, j));
                    if via < m.get(i, j) {
                        m.set(i, j, via);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::close;

    #[test]
    fn transitive_input_is_a_fixpoint() {
        let m = PairMatrix::from_rows(&[vec![0.0, 0.2, 0.5], vec![0.0, 0.0, 0.3], vec![0.0, 0.0, 0.0]]).unwrap();
        assert_eq!(transitive_envelope(&m, ConormFamily::BoundedSum).unwrap(), m);
    }

    #[test]
    fn long_edge_is_cut_to_chain_cost() {
        let m = PairMatrix::from_rows(&[vec![0.0, 0.2, 0.9], vec![0.0, 0.0, 0.3], vec![0.0, 0.0, 0.0]]).unwrap();
        let env = transitive_envelope(&m, ConormFamily::BoundedSum).unwrap();
        assert!(close(env.get(0, 2), 0.5));
        // chain 0 -> 1 -> 2 under the other conorms
        let max = transitive_envelope(&m, ConormFamily::Maximum).unwrap();
        assert!(close(max.get(0, 2), 0.3));
        let prob = transitive_envelope(&m, ConormFamily::ProbabilisticSum).unwrap();
        assert!(close(prob.get(0, 2), 0.2 + 0.3 - 0.06));
    }

    #[test]
    fn rejects_nonzero_diagonal() {
        let m = PairMatrix::from_rows(&[vec![0.0, 0.1], vec![0.2, 0.4]]).unwrap();
        assert_eq!(
            transitive_envelope(&m, ConormFamily::Maximum).unwrap_err(),
            Error::NonzeroDiagonal(1)
        );
    }
}
