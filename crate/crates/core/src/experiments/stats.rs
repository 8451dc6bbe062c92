//! Box-plot summary of an empirical distribution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Five-number box-plot summary. Units follow the input samples (dB for
/// SNR improvements).
///
/// Quartiles use linear interpolation between order statistics at
/// position `p * (n - 1)`. Whiskers extend to the most extreme sample
/// within 1.5 IQR of the box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionStats {
    pub median: f64,
    pub lower_quartile: f64,
    pub upper_quartile: f64,
    pub lower_whisker: f64,
    pub upper_whisker: f64,
    pub sample_count: usize,
}

impl DistributionStats {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Empty("distribution statistics"));
        }
        if let Some(bad) = samples.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid("samples", format!("non-finite sample {bad}")));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);

        let median = quantile_sorted(&sorted, 0.5);
        let lower_quartile = quantile_sorted(&sorted, 0.25);
        let upper_quartile = quantile_sorted(&sorted, 0.75);
        let iqr = upper_quartile - lower_quartile;
        let lo_fence = lower_quartile - 1.5 * iqr;
        let hi_fence = upper_quartile + 1.5 * iqr;
        let lower_whisker = sorted
            .iter()
            .copied()
            .find(|&v| v >= lo_fence)
            .unwrap_or(lower_quartile)
            .min(lower_quartile);
        let upper_whisker = sorted
            .iter()
            .rev()
            .copied()
            .find(|&v| v <= hi_fence)
            .unwrap_or(upper_quartile)
            .max(upper_quartile);

        Ok(DistributionStats {
            median,
            lower_quartile,
            upper_quartile,
            lower_whisker,
            upper_whisker,
            sample_count: sorted.len(),
        })
    }
}

/// Linearly interpolated quantile of already sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = p.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}
