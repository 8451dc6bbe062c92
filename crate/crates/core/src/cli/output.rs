//! CSV row schemas and the run manifest.
//!
//! Angles are written in degrees, improvements in dB, rates in bits/s and
//! delays in nanoseconds.

use serde::Serialize;

use super::CliError;
use crate::beamforming::PolarizationState;
use crate::experiments::{ErgodicRates, ImprovementPoint, NarrowbandReport, SweepConfig};
use crate::geometry::Vec3;

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub tool_version: String,
    pub timestamp: String,
    pub scenario: String,
    pub scale: f64,
    pub threads: usize,
    /// Resolved configuration as TOML; parses back to the same config.
    pub config_echo: String,
    pub derived: ManifestDerived,
    pub outputs: Vec<String>,
    pub summary: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestDerived {
    pub n_tx: usize,
    pub wavelength_m: f64,
    pub noise_power_w: f64,
    pub radius_m: f64,
    pub orientation_count: usize,
    pub quartile_method: String,
    pub whisker_rule: String,
}

pub(crate) fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| CliError::Output {
            path: "<csv buffer>".into(),
            reason: e.to_string(),
        })?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Output {
        path: "<csv buffer>".into(),
        reason: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct Fig3Row {
    distance_m: f64,
    alpha_deg: f64,
    antenna_index: usize,
    x_m: f64,
    y_m: f64,
    /// Empty when the antenna is not linearly polarized.
    polarization_angle_deg: Option<f64>,
    linear: bool,
}

impl Fig3Row {
    pub(crate) fn new(distance_m: f64, alpha_deg: f64, antenna_index: usize, p: &Vec3, s: &PolarizationState) -> Self {
        Fig3Row {
            distance_m,
            alpha_deg,
            antenna_index,
            x_m: p.x,
            y_m: p.y,
            polarization_angle_deg: s.angle().map(f64::to_degrees),
            linear: matches!(s, PolarizationState::Linear(_)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct ImprovementRow {
    pub alpha_deg: f64,
    pub distance_m: f64,
    pub samples: usize,
    pub switched_median_db: f64,
    pub switched_q1_db: f64,
    pub switched_q3_db: f64,
    pub switched_whisker_lo_db: f64,
    pub switched_whisker_hi_db: f64,
    pub dual_median_db: f64,
    pub dual_q1_db: f64,
    pub dual_q3_db: f64,
    pub dual_whisker_lo_db: f64,
    pub dual_whisker_hi_db: f64,
}

impl ImprovementRow {
    pub(crate) fn new(alpha_deg: f64, p: &ImprovementPoint) -> Self {
        let (s, d) = (&p.vs_switched, &p.vs_dual);
        ImprovementRow {
            alpha_deg,
            distance_m: p.distance,
            samples: s.sample_count,
            switched_median_db: s.median,
            switched_q1_db: s.lower_quartile,
            switched_q3_db: s.upper_quartile,
            switched_whisker_lo_db: s.lower_whisker,
            switched_whisker_hi_db: s.upper_whisker,
            dual_median_db: d.median,
            dual_q1_db: d.lower_quartile,
            dual_q3_db: d.upper_quartile,
            dual_whisker_lo_db: d.lower_whisker,
            dual_whisker_hi_db: d.upper_whisker,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct RateRow {
    alpha_deg: f64,
    distance_m: f64,
    rate_dpc_bps: f64,
    rate_dual_bps: f64,
    rate_switched_bps: f64,
}

impl RateRow {
    pub(crate) fn new(alpha_deg: f64, distance_m: f64, r: &ErgodicRates) -> Self {
        RateRow {
            alpha_deg,
            distance_m,
            rate_dpc_bps: r.dpc,
            rate_dual_bps: r.dual,
            rate_switched_bps: r.switched,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct SweepRow {
    alpha_deg: f64,
    distance_m: f64,
    samples: usize,
    switched_median_db: f64,
    switched_q1_db: f64,
    switched_q3_db: f64,
    switched_whisker_lo_db: f64,
    switched_whisker_hi_db: f64,
    dual_median_db: f64,
    dual_q1_db: f64,
    dual_q3_db: f64,
    dual_whisker_lo_db: f64,
    dual_whisker_hi_db: f64,
    rate_dpc_bps: f64,
    rate_dual_bps: f64,
    rate_switched_bps: f64,
}

impl SweepRow {
    pub(crate) fn new(alpha_deg: f64, p: &ImprovementPoint, r: &ErgodicRates) -> Self {
        // csv cannot serialize flattened structs
        let i = ImprovementRow::new(alpha_deg, p);
        SweepRow {
            alpha_deg,
            distance_m: i.distance_m,
            samples: i.samples,
            switched_median_db: i.switched_median_db,
            switched_q1_db: i.switched_q1_db,
            switched_q3_db: i.switched_q3_db,
            switched_whisker_lo_db: i.switched_whisker_lo_db,
            switched_whisker_hi_db: i.switched_whisker_hi_db,
            dual_median_db: i.dual_median_db,
            dual_q1_db: i.dual_q1_db,
            dual_q3_db: i.dual_q3_db,
            dual_whisker_lo_db: i.dual_whisker_lo_db,
            dual_whisker_hi_db: i.dual_whisker_hi_db,
            rate_dpc_bps: r.dpc,
            rate_dual_bps: r.dual,
            rate_switched_bps: r.switched,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct CheckRow {
    distance_m: f64,
    radius_m: f64,
    bandwidth_hz: f64,
    delay_spread_ns: f64,
    threshold_ns: f64,
    pub valid: bool,
}

impl CheckRow {
    pub(crate) fn new(distance_m: f64, cfg: &SweepConfig, r: &NarrowbandReport) -> Self {
        CheckRow {
            distance_m,
            radius_m: cfg.radius,
            bandwidth_hz: cfg.bandwidth,
            delay_spread_ns: r.delay_spread * 1e9,
            threshold_ns: cfg.narrowband_margin / cfg.bandwidth * 1e9,
            valid: r.valid,
        }
    }
}
