//! Orientation, angle and distance sweeps.
//!
//! Every sweep point fixes the receiver centre `(alpha, d)`, builds the
//! position-dependent channel terms once and then evaluates all receive
//! dipole orientations against them. Orientations are evaluated in
//! parallel, but each SNR is a sequential sum over antennas and results
//! land in pre-indexed slots, so the output does not depend on the number
//! of worker threads.

mod stats;

pub use stats::{quantile_sorted, DistributionStats};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beamforming::{dpc_beamformer, polarization_angle_map, LinkBudget, PolarizationState, SnrTriple};
use crate::channel::{assemble_channel, ChannelGeometry};
use crate::constants::{thermal_noise_power, wavelength, SPEED_OF_LIGHT};
use crate::error::{require_positive, Error, Result};
use crate::geometry::{build_circular_array, orientation_grid, rx_position, ArrayLayout, RxPose, Vec3};

/// SNR of one receive-dipole orientation at one receiver location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub alpha: f64,
    pub distance: f64,
    pub orientation_index: usize,
    pub snr: SnrTriple,
}

/// Benchmark architecture an improvement is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Baseline {
    Switched,
    Dual,
}

impl Baseline {
    pub fn snr(self, s: &SnrTriple) -> f64 {
        match self {
            Baseline::Switched => s.switched,
            Baseline::Dual => s.dual,
        }
    }
}

/// Orientations handled per parallel task.
const ORIENTATION_BLOCK: usize = 18;

/// One record per entry of `grid`, in grid order.
pub fn orientation_sweep(
    layout: &ArrayLayout,
    alpha: f64,
    distance: f64,
    budget: &LinkBudget,
    grid: &[Vec3],
) -> Result<Vec<SweepRecord>> {
    require_positive("distance", distance)?;
    let geometry = ChannelGeometry::new(layout, rx_position(distance, alpha))?;
    let sums: Vec<_> = grid
        .par_chunks(ORIENTATION_BLOCK)
        .flat_map_iter(|block| geometry.gain_sums_many(block))
        .collect();
    Ok(sums
        .iter()
        .enumerate()
        .map(|(orientation_index, s)| SweepRecord {
            alpha,
            distance,
            orientation_index,
            snr: SnrTriple::from_gain_sums(s, budget),
        })
        .collect())
}

/// Per-record `10 log10(SNR_dpc / SNR_baseline)` in dB.
pub fn improvements_db(records: &[SweepRecord], baseline: Baseline) -> Vec<f64> {
    records.iter().map(|r| r.snr.improvement_db(baseline.snr(&r.snr))).collect()
}

/// Box-plot statistics of the DPC improvement over `baseline`.
pub fn improvement_stats(records: &[SweepRecord], baseline: Baseline) -> Result<DistributionStats> {
    if records.is_empty() {
        return Err(Error::Empty("improvement statistics"));
    }
    DistributionStats::from_samples(&improvements_db(records, baseline))
}

/// Improvement statistics against both baselines at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImprovementPoint {
    pub alpha: f64,
    pub distance: f64,
    pub vs_switched: DistributionStats,
    pub vs_dual: DistributionStats,
}

impl ImprovementPoint {
    pub fn from_records(alpha: f64, distance: f64, records: &[SweepRecord]) -> Result<Self> {
        Ok(ImprovementPoint {
            alpha,
            distance,
            vs_switched: improvement_stats(records, Baseline::Switched)?,
            vs_dual: improvement_stats(records, Baseline::Dual)?,
        })
    }

    pub fn stats(&self, baseline: Baseline) -> &DistributionStats {
        match baseline {
            Baseline::Switched => &self.vs_switched,
            Baseline::Dual => &self.vs_dual,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSweep {
    pub points: Vec<ImprovementPoint>,
}

impl DistanceSweep {
    /// Median improvement per distance, in sweep order.
    pub fn medians(&self, baseline: Baseline) -> Vec<f64> {
        self.points.iter().map(|p| p.stats(baseline).median).collect()
    }
}

/// Orientation sweep plus both improvement statistics at every distance.
pub fn distance_sweep(
    layout: &ArrayLayout,
    alpha: f64,
    distances: &[f64],
    budget: &LinkBudget,
    grid: &[Vec3],
) -> Result<DistanceSweep> {
    check_ascending(distances)?;
    let points = distances
        .iter()
        .map(|&d| ImprovementPoint::from_records(alpha, d, &orientation_sweep(layout, alpha, d, budget, grid)?))
        .collect::<Result<_>>()?;
    Ok(DistanceSweep { points })
}

fn check_ascending(distances: &[f64]) -> Result<()> {
    if distances.is_empty() {
        return Err(Error::Empty("a distance sweep"));
    }
    if distances.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("distances", "must be strictly ascending"));
    }
    Ok(())
}

/// Mean achievable rate `B log2(1 + SNR)` of each architecture, bits/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErgodicRates {
    pub dpc: f64,
    pub dual: f64,
    pub switched: f64,
}

pub fn ergodic_rate(records: &[SweepRecord], bandwidth: f64) -> Result<ErgodicRates> {
    require_positive("bandwidth", bandwidth)?;
    if records.is_empty() {
        return Err(Error::Empty("an ergodic rate"));
    }
    let n = records.len() as f64;
    let mean = |f: fn(&SnrTriple) -> f64| records.iter().map(|r| bandwidth * f(&r.snr).ln_1p()).sum::<f64>() / (n * std::f64::consts::LN_2);
    Ok(ErgodicRates {
        dpc: mean(|s| s.dpc),
        dual: mean(|s| s.dual),
        switched: mean(|s| s.switched),
    })
}

/// Default margin: the delay spread must stay below `0.1 / B`.
pub const NARROWBAND_MARGIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NarrowbandReport {
    /// Seconds.
    pub delay_spread: f64,
    pub valid: bool,
}

/// Boresight delay spread `(sqrt(d^2 + R^2) - d) / c` against `0.1 / B`.
pub fn narrowband_check(distance: f64, radius: f64, bandwidth: f64) -> Result<NarrowbandReport> {
    narrowband_check_with(distance, radius, bandwidth, NARROWBAND_MARGIN)
}

pub fn narrowband_check_with(distance: f64, radius: f64, bandwidth: f64, margin: f64) -> Result<NarrowbandReport> {
    require_positive("distance", distance)?;
    require_positive("bandwidth", bandwidth)?;
    require_positive("margin", margin)?;
    if !(radius >= 0.0 && radius.is_finite()) {
        return Err(Error::invalid("radius", "must be finite and >= 0"));
    }
    let delay_spread = (distance.hypot(radius) - distance) / SPEED_OF_LIGHT;
    Ok(NarrowbandReport {
        delay_spread,
        valid: delay_spread < margin / bandwidth,
    })
}

/// Optimal polarization state at every antenna for one receiver pose.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationMap {
    pub states: Vec<PolarizationState>,
}

impl PolarizationMap {
    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().filter_map(|s| s.angle())
    }

    /// Population standard deviation of the linear polarization angles, in
    /// radians.
    pub fn angle_std_dev(&self) -> f64 {
        let (n, sum) = self.angles().fold((0usize, 0.0), |(n, s), a| (n + 1, s + a));
        if n == 0 {
            return 0.0;
        }
        let mean = sum / n as f64;
        (self.angles().map(|a| (a - mean).powi(2)).sum::<f64>() / n as f64).sqrt()
    }

    pub fn non_linear_count(&self) -> usize {
        self.states.iter().filter(|s| matches!(s, PolarizationState::NonLinear)).count()
    }
}

pub fn polarization_map(layout: &ArrayLayout, pose: &RxPose) -> Result<PolarizationMap> {
    let channel = assemble_channel(layout, pose)?;
    Ok(PolarizationMap {
        states: polarization_angle_map(&dpc_beamformer(&channel)),
    })
}

/// Physical and grid parameters shared by all scenarios. Angles are in
/// radians, lengths in meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub radius: f64,
    pub carrier_frequency: f64,
    pub alpha_values: Vec<f64>,
    pub distance_values: Vec<f64>,
    pub azimuth_step: f64,
    pub elevation_step: f64,
    pub bandwidth: f64,
    pub transmit_power: f64,
    pub noise_power: f64,
    pub narrowband_margin: f64,
}

impl SweepConfig {
    /// 15 cm array at 300 GHz, 100 MHz bandwidth, 1 mW, thermal noise,
    /// alpha in {0, 10, ..., 60} deg and d in {10, 20, ..., 100} cm.
    pub fn reference() -> Self {
        SweepConfig {
            radius: 0.15,
            carrier_frequency: 300e9,
            alpha_values: (0..=6).map(|i| (10.0 * i as f64).to_radians()).collect(),
            distance_values: (1..=10).map(|i| 0.1 * i as f64).collect(),
            azimuth_step: 10f64.to_radians(),
            elevation_step: 10f64.to_radians(),
            bandwidth: 100e6,
            transmit_power: 1e-3,
            noise_power: thermal_noise_power(100e6),
            narrowband_margin: NARROWBAND_MARGIN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("radius", self.radius)?;
        require_positive("carrier_frequency", self.carrier_frequency)?;
        require_positive("bandwidth", self.bandwidth)?;
        require_positive("transmit_power", self.transmit_power)?;
        require_positive("noise_power", self.noise_power)?;
        require_positive("narrowband_margin", self.narrowband_margin)?;
        if self.alpha_values.is_empty() {
            return Err(Error::Empty("the alpha grid"));
        }
        if let Some(a) = self.alpha_values.iter().find(|a| !a.is_finite()) {
            return Err(Error::invalid("alpha_values", format!("non-finite angle {a}")));
        }
        for &d in &self.distance_values {
            require_positive("distance_values", d)?;
        }
        check_ascending(&self.distance_values)?;
        self.grid().map(|_| ())
    }

    pub fn wavelength(&self) -> f64 {
        wavelength(self.carrier_frequency)
    }

    pub fn layout(&self) -> Result<ArrayLayout> {
        build_circular_array(self.radius, self.wavelength())
    }

    pub fn budget(&self) -> Result<LinkBudget> {
        LinkBudget::new(self.transmit_power, self.noise_power)
    }

    pub fn grid(&self) -> Result<Vec<Vec3>> {
        orientation_grid(self.azimuth_step, self.elevation_step)
    }

    pub fn narrowband(&self, distance: f64) -> Result<NarrowbandReport> {
        narrowband_check_with(distance, self.radius, self.bandwidth, self.narrowband_margin)
    }

    /// Warns (without failing) when a distance violates the narrowband
    /// assumption.
    pub fn warn_if_wideband(&self, distance: f64) -> Result<NarrowbandReport> {
        let report = self.narrowband(distance)?;
        if !report.valid {
            log::warn!(
                "delay spread {:.4} ns at d = {distance} m exceeds {} / B; narrowband model may not hold",
                report.delay_spread * 1e9,
                self.narrowband_margin
            );
        }
        Ok(report)
    }
}
