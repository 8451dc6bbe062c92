//! Scenario runner behind the `dpc-focus` binary.
//!
//! ```text
//! dpc-focus <fig3|fig5|fig6|fig7|sweep|check> --config <path> --out <dir> [--scale <f>] [--threads <n>]
//! ```
//!
//! Each subcommand writes `<scenario>.csv` plus `manifest.json` into the
//! output directory. CSV bodies depend only on the configuration, the
//! scale factor and the code; the run timestamp lives in the manifest.

mod config;
mod output;

pub use config::{ConfigError, RunConfig};
pub use output::{Manifest, ManifestDerived};

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::json;

use crate::experiments::{
    ergodic_rate, improvement_stats, orientation_sweep, polarization_map, Baseline, ImprovementPoint, SweepConfig,
};
use crate::geometry::{RxPose, Vec3};
use output::{CheckRow, Fig3Row, ImprovementRow, RateRow, SweepRow};

/// Exit status for each failure class.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const RUNTIME: u8 = 1;
    /// Command-line usage errors, including unknown subcommands.
    pub const USAGE: u8 = 2;
    pub const CONFIG: u8 = 3;
    pub const OUTPUT: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "dpc-focus", version, about = "Near-field focusing with per-antenna polarization control")]
pub struct Cli {
    #[arg(value_enum)]
    pub scenario: Scenario,

    /// Run configuration (TOML).
    #[arg(long)]
    pub config: PathBuf,

    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,

    /// Multiplies the array radius, e.g. 0.1 for a quick desk-scale run.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,

    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// Per-antenna optimal polarization angles.
    Fig3,
    /// Improvement statistics versus alpha.
    Fig5,
    /// Improvement statistics versus distance.
    Fig6,
    /// Ergodic rates versus distance.
    Fig7,
    /// Full alpha x distance grid.
    Sweep,
    /// Narrowband validity table.
    Check,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Fig3 => "fig3",
            Scenario::Fig5 => "fig5",
            Scenario::Fig6 => "fig6",
            Scenario::Fig7 => "fig7",
            Scenario::Sweep => "sweep",
            Scenario::Check => "check",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid option: {0}")]
    Usage(String),
    #[error("cannot write output to {path}: {reason}")]
    Output { path: String, reason: String },
    #[error(transparent)]
    Model(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Usage(_) => exit::USAGE,
            CliError::Output { .. } => exit::OUTPUT,
            CliError::Model(_) => exit::RUNTIME,
        }
    }
}

/// Parses `std::env::args` and runs; for use from `main`.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::SUCCESS });
        }
    };
    match run(&cli) {
        Ok(manifest) => {
            for path in &manifest.outputs {
                println!("wrote {path}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Validates the config, runs the scenario and writes its outputs.
pub fn run(cli: &Cli) -> Result<Manifest, CliError> {
    if !(cli.scale.is_finite() && cli.scale > 0.0) {
        return Err(CliError::Usage(format!("--scale must be > 0, got {}", cli.scale)));
    }
    let config = RunConfig::load(&cli.config)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be >= 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let threads = pool.current_num_threads();

    let sweep = config.sweep_config(cli.scale);
    let layout = sweep.layout()?;
    let (csv, summary) = pool.install(|| run_scenario(cli.scenario, &config, &sweep))?;

    let out_dir = &cli.out;
    std::fs::create_dir_all(out_dir).map_err(|e| output_error(out_dir, e))?;
    let csv_path = out_dir.join(format!("{}.csv", cli.scenario.name()));
    std::fs::write(&csv_path, csv).map_err(|e| output_error(&csv_path, e))?;

    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339(),
        scenario: cli.scenario.name().to_string(),
        scale: cli.scale,
        threads,
        config_echo: config.to_toml(),
        derived: ManifestDerived {
            n_tx: layout.len(),
            wavelength_m: sweep.wavelength(),
            noise_power_w: sweep.noise_power,
            radius_m: sweep.radius,
            orientation_count: sweep.grid()?.len(),
            quartile_method: "linear interpolation at p*(n-1)".into(),
            whisker_rule: "most extreme sample within 1.5*IQR of the box".into(),
        },
        outputs: vec![csv_path.display().to_string()],
        summary,
    };
    let manifest_path = out_dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(&manifest_path, text).map_err(|e| output_error(&manifest_path, e))?;
    Ok(manifest)
}

fn output_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Output {
        path: path.display().to_string(),
        reason: e.to_string(),
    }
}

/// CSV body and manifest summary for one scenario.
pub fn run_scenario(
    scenario: Scenario,
    config: &RunConfig,
    sweep: &SweepConfig,
) -> Result<(String, serde_json::Value), CliError> {
    let layout = sweep.layout()?;
    let budget = sweep.budget()?;
    let grid = sweep.grid()?;
    let ray_alpha = config.ray_alpha_deg.to_radians();

    let point = |alpha: f64, distance: f64| -> Result<_, CliError> {
        sweep.warn_if_wideband(distance)?;
        Ok(orientation_sweep(&layout, alpha, distance, &budget, &grid)?)
    };

    match scenario {
        Scenario::Fig3 => {
            let mut rows = Vec::new();
            let mut spreads = Vec::new();
            for &d in &config.fig3_distance_m {
                let pose = RxPose::new(d, ray_alpha, Vec3::Z)?;
                let map = polarization_map(&layout, &pose)?;
                spreads.push(json!({
                    "distance_m": d,
                    "angle_std_dev_deg": map.angle_std_dev().to_degrees(),
                    "non_linear_antennas": map.non_linear_count(),
                }));
                rows.extend(layout.positions().iter().zip(&map.states).enumerate().map(|(k, (p, s))| {
                    Fig3Row::new(d, config.ray_alpha_deg, k, p, s)
                }));
            }
            Ok((output::to_csv(&rows)?, json!({ "polarization_spread": spreads })))
        }
        Scenario::Fig5 => {
            let d = config.fig5_distance_m;
            let mut rows = Vec::new();
            let mut pooled = Vec::new();
            for (&alpha, &alpha_deg) in sweep.alpha_values.iter().zip(&config.alpha_deg) {
                let records = point(alpha, d)?;
                rows.push(ImprovementRow::new(alpha_deg, &ImprovementPoint::from_records(alpha, d, &records)?));
                pooled.extend(records);
            }
            let summary = json!({
                "distance_m": d,
                "pooled_median_vs_switched_db": improvement_stats(&pooled, Baseline::Switched)?.median,
                "pooled_median_vs_dual_db": improvement_stats(&pooled, Baseline::Dual)?.median,
                "pooled_samples": pooled.len(),
            });
            Ok((output::to_csv(&rows)?, summary))
        }
        Scenario::Fig6 => {
            let mut rows = Vec::new();
            for &d in &sweep.distance_values {
                let records = point(ray_alpha, d)?;
                rows.push(ImprovementRow::new(
                    config.ray_alpha_deg,
                    &ImprovementPoint::from_records(ray_alpha, d, &records)?,
                ));
            }
            let medians: Vec<f64> = rows.iter().map(|r| r.dual_median_db).collect();
            Ok((output::to_csv(&rows)?, json!({ "median_vs_dual_db": medians })))
        }
        Scenario::Fig7 => {
            let mut rows = Vec::new();
            for &d in &sweep.distance_values {
                let rates = ergodic_rate(&point(ray_alpha, d)?, sweep.bandwidth)?;
                rows.push(RateRow::new(config.ray_alpha_deg, d, &rates));
            }
            Ok((output::to_csv(&rows)?, json!({ "transmit_power_w": sweep.transmit_power })))
        }
        Scenario::Sweep => {
            let mut rows = Vec::new();
            for (&alpha, &alpha_deg) in sweep.alpha_values.iter().zip(&config.alpha_deg) {
                for &d in &sweep.distance_values {
                    let records = point(alpha, d)?;
                    let stats = ImprovementPoint::from_records(alpha, d, &records)?;
                    let rates = ergodic_rate(&records, sweep.bandwidth)?;
                    rows.push(SweepRow::new(alpha_deg, &stats, &rates));
                }
            }
            Ok((output::to_csv(&rows)?, json!({ "points": rows.len() })))
        }
        Scenario::Check => {
            let rows = sweep
                .distance_values
                .iter()
                .map(|&d| Ok(CheckRow::new(d, sweep, &sweep.narrowband(d)?)))
                .collect::<Result<Vec<_>, crate::Error>>()?;
            let all_valid = rows.iter().all(|r| r.valid);
            Ok((output::to_csv(&rows)?, json!({ "all_valid": all_valid })))
        }
    }
}
