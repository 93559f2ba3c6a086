//! Empirical quantile binning.
//!
//! Boundaries are sample quantiles at probabilities `1/η, 2/η, ..., 1`,
//! estimated by linear interpolation between order statistics. Bin indices
//! are 1-based: bin `i` holds the values `v` with `q_{i-1} < v <= q_i`.

use crate::error::{Error, Result};
use crate::series::UnivariateSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantileBinning {
    boundaries: Vec<f64>,
}

impl QuantileBinning {
    /// Wraps precomputed boundaries. They must be non-empty and non-decreasing.
    pub fn from_boundaries(boundaries: Vec<f64>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::domain("quantile binning needs at least one boundary"));
        }
        if boundaries.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::domain("quantile boundaries must be non-decreasing"));
        }
        Ok(Self { boundaries })
    }

    pub fn eta(&self) -> usize {
        self.boundaries.len()
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// The probability level of each boundary, `i/η`.
    pub fn probs(&self) -> Vec<f64> {
        let eta = self.eta() as f64;
        (1..=self.eta()).map(|i| i as f64 / eta).collect()
    }

    /// Smallest 1-based index `i` with `value <= q_i`.
    pub fn which_quantile(&self, value: f64) -> Result<usize> {
        let max = *self.boundaries.last().expect("non-empty");
        if !(value <= max) {
            return Err(Error::OutOfRange { value, max });
        }
        Ok(self.boundaries.partition_point(|&q| q < value) + 1)
    }
}

/// Sample quantile of sorted data at probability `p` (linear interpolation).
pub(crate) fn interpolate_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

pub fn compute_quantiles(ts: &UnivariateSeries, eta: usize) -> Result<QuantileBinning> {
    if eta == 0 {
        return Err(Error::domain("number of quantiles must be at least 1"));
    }
    let mut sorted = ts.values().to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let mut boundaries: Vec<f64> = (1..=eta)
        .map(|i| interpolate_sorted(&sorted, i as f64 / eta as f64))
        .collect();
    // Interpolation rounding must not break monotonicity or the max boundary.
    for i in 1..eta {
        if boundaries[i] < boundaries[i - 1] {
            boundaries[i] = boundaries[i - 1];
        }
    }
    boundaries[eta - 1] = sorted[sorted.len() - 1];
    Ok(QuantileBinning { boundaries })
}

/// Bins every observation of `ts`.
pub fn quantile_sequence(ts: &UnivariateSeries, binning: &QuantileBinning) -> Result<Vec<usize>> {
    ts.values().iter().map(|&v| binning.which_quantile(v)).collect()
}
