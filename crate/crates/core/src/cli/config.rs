//! Run configuration file.
//!
//! A flat TOML document. Frequencies are in Hz, lengths in meters, powers
//! in watts and angles in degrees:
//!
//! ```toml
//! radius_m = 0.15
//! carrier_frequency_hz = 300e9
//! bandwidth_hz = 100e6
//! transmit_power_w = 1e-3
//! # noise_power_w = 4.0e-13          # default: k_B * 290 K * bandwidth
//! # alpha_deg = [0, 10, 20, 30, 40, 50, 60]
//! # distance_m = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
//! # azimuth_step_deg = 10
//! # elevation_step_deg = 10
//! # narrowband_margin = 0.1
//! # ray_alpha_deg = 30                 # fig3, fig6, fig7
//! # fig3_distance_m = [0.15, 1.0]
//! # fig5_distance_m = 0.1
//! ```

use serde::{Deserialize, Serialize};

use crate::constants::thermal_noise_power;
use crate::experiments::{SweepConfig, NARROWBAND_MARGIN};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("config does not match the schema: {0}")]
    Schema(String),
    #[error("invalid config: {0}")]
    Invalid(#[from] crate::Error),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    radius_m: f64,
    carrier_frequency_hz: f64,
    bandwidth_hz: f64,
    transmit_power_w: f64,
    noise_power_w: Option<f64>,
    alpha_deg: Option<Vec<f64>>,
    distance_m: Option<Vec<f64>>,
    azimuth_step_deg: Option<f64>,
    elevation_step_deg: Option<f64>,
    narrowband_margin: Option<f64>,
    ray_alpha_deg: Option<f64>,
    fig3_distance_m: Option<Vec<f64>>,
    fig5_distance_m: Option<f64>,
}

/// Fully resolved configuration: every optional key filled with its
/// default. Serializes back to the same key set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub radius_m: f64,
    pub carrier_frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub transmit_power_w: f64,
    pub noise_power_w: f64,
    pub alpha_deg: Vec<f64>,
    pub distance_m: Vec<f64>,
    pub azimuth_step_deg: f64,
    pub elevation_step_deg: f64,
    pub narrowband_margin: f64,
    pub ray_alpha_deg: f64,
    pub fig3_distance_m: Vec<f64>,
    pub fig5_distance_m: f64,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        RunConfig::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Schema(e.message().to_string()))?;
        let cfg = RunConfig {
            radius_m: raw.radius_m,
            carrier_frequency_hz: raw.carrier_frequency_hz,
            bandwidth_hz: raw.bandwidth_hz,
            transmit_power_w: raw.transmit_power_w,
            noise_power_w: raw.noise_power_w.unwrap_or_else(|| thermal_noise_power(raw.bandwidth_hz)),
            alpha_deg: raw.alpha_deg.unwrap_or_else(|| (0..=6).map(|i| 10.0 * i as f64).collect()),
            distance_m: raw.distance_m.unwrap_or_else(|| (1..=10).map(|i| i as f64 / 10.0).collect()),
            azimuth_step_deg: raw.azimuth_step_deg.unwrap_or(10.0),
            elevation_step_deg: raw.elevation_step_deg.unwrap_or(10.0),
            narrowband_margin: raw.narrowband_margin.unwrap_or(NARROWBAND_MARGIN),
            ray_alpha_deg: raw.ray_alpha_deg.unwrap_or(30.0),
            fig3_distance_m: raw.fig3_distance_m.unwrap_or_else(|| vec![0.15, 1.0]),
            fig5_distance_m: raw.fig5_distance_m.unwrap_or(0.1),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        self.sweep_config(1.0).validate()?;
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(ConfigError::Schema(format!("`{name}` must be finite and > 0, got {v}")))
            }
        };
        positive("fig5_distance_m", self.fig5_distance_m)?;
        if !self.ray_alpha_deg.is_finite() {
            return Err(ConfigError::Schema("`ray_alpha_deg` must be finite".into()));
        }
        if self.fig3_distance_m.is_empty() {
            return Err(ConfigError::Schema("`fig3_distance_m` must not be empty".into()));
        }
        for &d in &self.fig3_distance_m {
            positive("fig3_distance_m", d)?;
        }
        Ok(())
    }

    /// TOML text that parses back to `self`.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config always serializes")
    }

    /// Physical sweep parameters in SI units, with the array radius
    /// multiplied by `scale`.
    pub fn sweep_config(&self, scale: f64) -> SweepConfig {
        SweepConfig {
            radius: self.radius_m * scale,
            carrier_frequency: self.carrier_frequency_hz,
            alpha_values: self.alpha_deg.iter().map(|a| a.to_radians()).collect(),
            distance_values: self.distance_m.clone(),
            azimuth_step: self.azimuth_step_deg.to_radians(),
            elevation_step: self.elevation_step_deg.to_radians(),
            bandwidth: self.bandwidth_hz,
            transmit_power: self.transmit_power_w,
            noise_power: self.noise_power_w,
            narrowband_margin: self.narrowband_margin,
        }
    }
}
