//! Square matrices of unit values indexed by ordered world pairs.

use crate::error::{check_unit, Error, Result};
use crate::norm::TOLERANCE;
use crate::worlds::Proposition;

/// Row-major `n x n` matrix; entry `(i, j)` belongs to the ordered pair
/// `(world i, world j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMatrix {
    n: usize,
    data: Vec<f64>,
}

impl PairMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                actual: data.len(),
            });
        }
        for &v in &data {
            check_unit(v)?;
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub(crate) fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[f64]>::to_vec)
            .take(self.n)
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Largest absolute entrywise difference; infinite on size mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Entrywise equality within 1e-9.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.max_abs_diff(other) <= TOLERANCE
    }

    /// Entrywise `self <= other` within 1e-9.
    pub fn le(&self, other: &Self) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| *a <= b + TOLERANCE)
    }

    /// `inf_{i in p} inf_{j in q} m(i, j)`.
    pub fn inf_inf(&self, p: &Proposition, q: &Proposition) -> Result<f64> {
        self.aggregate(p, q, (f64::INFINITY, f64::min), (f64::INFINITY, f64::min))
    }

    /// `sup_{i in p} inf_{j in q} m(i, j)`.
    pub fn sup_inf(&self, p: &Proposition, q: &Proposition) -> Result<f64> {
        self.aggregate(p, q, (f64::NEG_INFINITY, f64::max), (f64::INFINITY, f64::min))
    }

    /// `sup_{i in p} sup_{j in q} m(i, j)`.
    pub fn sup_sup(&self, p: &Proposition, q: &Proposition) -> Result<f64> {
        self.aggregate(p, q, (f64::NEG_INFINITY, f64::max), (f64::NEG_INFINITY, f64::max))
    }

    fn aggregate(
        &self,
        p: &Proposition,
        q: &Proposition,
        (outer_init, outer): (f64, fn(f64, f64) -> f64),
        (inner_init, inner): (f64, fn(f64, f64) -> f64),
    ) -> Result<f64> {
        if p.universe().len() != self.n || q.universe().len() != self.n {
            return Err(Error::UniverseMismatch);
        }
        if p.is_empty() || q.is_empty() {
            return Err(Error::EmptyProposition);
        }
        Ok(p.ids()
            .map(|i| q.ids().map(|j| self.get(i, j)).fold(inner_init, inner))
            .fold(outer_init, outer))
    }
}
