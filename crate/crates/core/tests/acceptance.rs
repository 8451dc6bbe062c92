//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! The full-scale points (R = 15 cm, ~2.8e5 antennas, 648 orientations
//! each) are computed once and shared between criteria.

mod common;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dpc_focus::beamforming::{dpc_beamformer, evaluate_snr, focusing_gain, power_constraint_error};
use dpc_focus::cli::{run_scenario, RunConfig, Scenario};
use dpc_focus::experiments::{ergodic_rate, improvement_stats, polarization_map, Baseline, SweepConfig, SweepRecord};
use dpc_focus::{assemble_channel, narrowband_check, orientation_sweep, ArrayLayout, Complex, PolarizedChannel, RxPose, Vec3};
use rand::Rng;

type Outcome = Result<String, String>;

const REL_TOL: f64 = 1e-9;
/// Slack for "a >= b" comparisons between SNRs that can tie exactly.
const ORDER_TOL: f64 = 1e-12;

fn reference_config() -> RunConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/reference.toml");
    RunConfig::load(&path).expect("reference config loads")
}

/// Orientation sweeps keyed by `(alpha_deg, distance_m)`, computed on demand.
struct PointCache {
    sweep: SweepConfig,
    layout: ArrayLayout,
    points: HashMap<(u64, u64), Vec<SweepRecord>>,
}

impl PointCache {
    fn new(sweep: SweepConfig) -> Self {
        let layout = sweep.layout().expect("layout");
        PointCache { sweep, layout, points: HashMap::new() }
    }

    fn get(&mut self, alpha_deg: f64, distance: f64) -> &[SweepRecord] {
        let key = (alpha_deg.to_bits(), distance.to_bits());
        let (sweep, layout) = (&self.sweep, &self.layout);
        self.points.entry(key).or_insert_with(|| {
            let budget = sweep.budget().expect("budget");
            let grid = sweep.grid().expect("grid");
            orientation_sweep(layout, alpha_deg.to_radians(), distance, &budget, &grid).expect("sweep")
        })
    }

    fn all_records(&self) -> impl Iterator<Item = &SweepRecord> {
        self.points.values().flatten()
    }
}

fn ordered(a: f64, b: f64) -> bool {
    a >= b * (1.0 - ORDER_TOL)
}

fn hierarchy_violations<'a>(records: impl Iterator<Item = &'a SweepRecord>) -> (usize, usize) {
    records.fold((0, 0), |(n, bad), r| {
        let ok = ordered(r.snr.dpc, r.snr.dual) && ordered(r.snr.dual, r.snr.switched);
        (n + 1, bad + usize::from(!ok))
    })
}

fn criterion_1(cfg: &RunConfig, cache: &mut PointCache) -> Outcome {
    let d = cfg.fig5_distance_m;
    let mut pooled = Vec::new();
    for &alpha in &cfg.alpha_deg {
        pooled.extend_from_slice(cache.get(alpha, d));
    }
    let sw = improvement_stats(&pooled, Baseline::Switched).map_err(|e| e.to_string())?.median;
    let du = improvement_stats(&pooled, Baseline::Dual).map_err(|e| e.to_string())?.median;
    let detail = format!(
        "N_tx = {}, {} samples: median vs switched {sw:.3} dB (1.9 +- 0.3), vs dual {du:.3} dB (0.4 +- 0.2)",
        cache.layout.len(),
        pooled.len()
    );
    if (sw - 1.9).abs() <= 0.3 && (du - 0.4).abs() <= 0.2 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_2(cfg: &RunConfig, cache: &mut PointCache) -> Outcome {
    let alpha = cfg.ray_alpha_deg;
    let near = improvement_stats(cache.get(alpha, 0.1), Baseline::Dual).map_err(|e| e.to_string())?.median;
    let far = improvement_stats(cache.get(alpha, 1.0), Baseline::Dual).map_err(|e| e.to_string())?.median;
    let detail = format!("median vs dual at alpha = {alpha} deg: {near:.4} dB at 10 cm, {far:.4} dB at 100 cm (< 0.1)");
    if far < near && far < 0.1 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_3(cfg: &RunConfig, layout: &ArrayLayout) -> Outcome {
    let alpha = cfg.ray_alpha_deg.to_radians();
    let spread = |d: f64| -> Result<f64, String> {
        let pose = RxPose::new(d, alpha, Vec3::Z).map_err(|e| e.to_string())?;
        Ok(polarization_map(layout, &pose).map_err(|e| e.to_string())?.angle_std_dev().to_degrees())
    };
    let (near, far) = (spread(0.15)?, spread(1.0)?);
    let detail = format!("angle std dev {near:.3} deg at 15 cm, {far:.3} deg at 100 cm, ratio {:.2} (>= 3)", near / far);
    if near >= 3.0 * far {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Rates at the ray angle over the distance grid.
fn check_rates(rows: &[(f64, f64, f64, f64)]) -> Outcome {
    let mut worst_far_gap: f64 = 0.0;
    for &(d, dpc, dual, switched) in rows {
        if !(ordered(dpc, dual) && ordered(dual, switched)) {
            return Err(format!("rate ordering broken at d = {d}: dpc {dpc:.6e}, dual {dual:.6e}, switched {switched:.6e}"));
        }
        if d >= 0.5 - 1e-12 {
            worst_far_gap = worst_far_gap.max((dpc - dual) / dual);
        }
    }
    let detail = format!(
        "dpc >= dual >= switched at {} distances; max (dpc - dual) / dual for d >= 0.5 m: {:.4}% (< 2%)",
        rows.len(),
        100.0 * worst_far_gap
    );
    if worst_far_gap < 0.02 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_4(cfg: &RunConfig, cache: &mut PointCache) -> Outcome {
    let mut rows = Vec::new();
    for &d in &cfg.distance_m {
        let r = ergodic_rate(cache.get(cfg.ray_alpha_deg, d), cfg.bandwidth_hz).map_err(|e| e.to_string())?;
        rows.push((d, r.dpc, r.dual, r.switched));
    }
    check_rates(&rows)
}

fn criterion_5() -> Outcome {
    let ns = narrowband_check(0.1, 0.15, 100e6).map_err(|e| e.to_string())?.delay_spread * 1e9;
    let detail = format!("delay spread at d = 10 cm, R = 15 cm: {ns:.6} ns (0.2676 +- 1e-4)");
    if (ns - 0.2676).abs() <= 1e-4 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(6);
    let mut worst: f64 = 0.0;
    let mut below = 0;
    for trial in 0..100 {
        let n = 1 + trial % 3;
        let (hx, hy) = common::random_channel(&mut rng, n);
        let channel = PolarizedChannel::new(hx.clone(), hy.clone()).map_err(|e| e.to_string())?;
        let bf = dpc_beamformer(&channel);
        let closed = focusing_gain(&channel, &bf.f_x, &bf.f_y);
        let grid = common::grid_search_gain(&hx, &hy);
        // The grid is a subset of the feasible set, so it cannot beat the optimum.
        if grid > closed * (1.0 + REL_TOL) {
            below += 1;
        }
        worst = worst.max((closed - grid).abs() / closed);
        if n == 1 {
            let joint = common::brute_force_single(hx[0], hy[0]);
            if joint > closed * (1.0 + REL_TOL) {
                below += 1;
            }
            worst = worst.max((closed - joint).abs() / closed);
        }
    }
    let detail = format!("100 channels (N = 1, 2, 3): max relative gap to grid search {worst:.2e} (<= 1e-3), {below} grid points beat closed form");
    if worst <= 1e-3 && below == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_invariants() -> Result<Vec<String>, String> {
    let mut rng = common::rng(7);
    let budget = dpc_focus::LinkBudget::new(1e-3, 4e-13).map_err(|e| e.to_string())?;
    let (mut order, mut identity, mut power, mut phase) = (0usize, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=16);
        let (hx, hy) = common::random_channel(&mut rng, n);
        let channel = PolarizedChannel::new(hx, hy).map_err(|e| e.to_string())?;
        let snr = evaluate_snr(&channel, &budget);
        if !(ordered(snr.dpc, snr.dual) && ordered(snr.dual, snr.switched)) {
            order += 1;
        }
        let bf = dpc_beamformer(&channel);
        let expected: f64 = channel.h_x.iter().zip(&channel.h_y).map(|(a, b)| a.norm().hypot(b.norm())).sum::<f64>()
            / (n as f64).sqrt();
        let g = focusing_gain(&channel, &bf.f_x, &bf.f_y);
        identity = identity.max((g - expected).abs() / expected);
        power = power.max(power_constraint_error(&bf));
        let rotated = evaluate_snr(&channel.scaled(Complex::from_polar(1.0, rng.random_range(-3.0..3.0))), &budget);
        for (a, b) in [(snr.dpc, rotated.dpc), (snr.dual, rotated.dual), (snr.switched, rotated.switched)] {
            phase = phase.max((a - b).abs() / a);
        }
    }
    if order > 0 || identity > REL_TOL || power > ORDER_TOL || phase > REL_TOL {
        return Err(format!(
            "random channels: {order} hierarchy violations, identity {identity:.1e}, power {power:.1e}, phase {phase:.1e}"
        ));
    }
    Ok(vec![
        "1e4 random channels: hierarchy holds".into(),
        format!("closed-form gain identity {identity:.1e}"),
        format!("per-antenna power {power:.1e}"),
        format!("global phase {phase:.1e}"),
    ])
}

/// Largest `|Im(h_x/h_y)| / |h_x/h_y|` over antennas where both entries are
/// non-negligible.
fn max_ratio_imag(channel: &PolarizedChannel) -> f64 {
    channel
        .h_x
        .iter()
        .zip(&channel.h_y)
        .filter(|(a, b)| a.norm() > 1e-18 && b.norm() > 1e-18)
        .map(|(a, b)| {
            let r = a / b;
            r.im.abs() / r.norm()
        })
        .fold(0.0, f64::max)
}

fn thread_determinism(cfg: &RunConfig, scale: f64, scenarios: &[Scenario]) -> Result<(), String> {
    let sweep = cfg.sweep_config(scale);
    for &s in scenarios {
        let outputs: Vec<String> = [1, 4]
            .iter()
            .map(|&t| {
                let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().expect("pool");
                pool.install(|| run_scenario(s, cfg, &sweep)).map(|(csv, _)| csv).map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        if outputs[0] != outputs[1] {
            return Err(format!("{} CSV differs between 1 and 4 threads", s.name()));
        }
    }
    Ok(())
}

fn criterion_7(cfg: &RunConfig, cache: &PointCache) -> Outcome {
    let mut parts = random_invariants()?;

    let (n, bad) = hierarchy_violations(cache.all_records());
    if bad > 0 {
        return Err(format!("{bad} of {n} experiment records break dpc >= dual >= switched"));
    }
    parts.push(format!("{n} experiment records ordered"));

    let pose = RxPose::new(0.15, cfg.ray_alpha_deg.to_radians(), Vec3::Z).map_err(|e| e.to_string())?;
    let channel = assemble_channel(&cache.layout, &pose).map_err(|e| e.to_string())?;
    let imag = max_ratio_imag(&channel);
    if imag > REL_TOL {
        return Err(format!("x/y channel ratio not real: {imag:.2e}"));
    }
    parts.push(format!("x/y ratio imag {imag:.1e}"));

    thread_determinism(cfg, 0.1, &[Scenario::Fig3, Scenario::Sweep])?;
    parts.push("fig3/sweep CSVs identical for 1 and 4 threads".into());
    Ok(parts.join("; "))
}

fn read_csv(path: &Path) -> Result<Vec<HashMap<String, f64>>, String> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let headers = reader.headers().map_err(|e| e.to_string())?.clone();
    reader
        .records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            Ok(headers
                .iter()
                .zip(rec.iter())
                .filter_map(|(h, v)| v.parse::<f64>().ok().map(|v| (h.to_string(), v)))
                .collect())
        })
        .collect()
}

fn run_binary(scenario: &str, out: &Path, threads: usize) -> Result<(), String> {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/reference.toml");
    let status = Command::new(env!("CARGO_BIN_EXE_dpc-focus"))
        .arg(scenario)
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(out)
        .args(["--scale", "0.1", "--threads", &threads.to_string()])
        .status()
        .map_err(|e| e.to_string())?;
    if status.success() {
        Ok(())
    } else {
        Err(format!("`dpc-focus {scenario}` exited with {status}"))
    }
}

fn criterion_8(cfg: &RunConfig) -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = |name: &str| -> PathBuf { tmp.path().join(name) };
    let scenarios = ["fig5", "fig6", "fig7"];

    let start = Instant::now();
    for s in scenarios {
        run_binary(s, &dir(s), 1)?;
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        return Err(format!("desk-scale fig5/fig6/fig7 took {:.1} s (>= 30 s)", elapsed.as_secs_f64()));
    }

    for s in scenarios {
        run_binary(s, &dir(&format!("{s}-t4")), 4)?;
        let a = std::fs::read(dir(s).join(format!("{s}.csv"))).map_err(|e| e.to_string())?;
        let b = std::fs::read(dir(&format!("{s}-t4")).join(format!("{s}.csv"))).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{s}.csv differs between --threads 1 and --threads 4"));
        }
    }

    let fig6 = read_csv(&dir("fig6").join("fig6.csv"))?;
    let median_at = |d: f64| fig6.iter().find(|r| (r["distance_m"] - d).abs() < 1e-9).map(|r| r["dual_median_db"]);
    let (near, far) = match (median_at(0.1), median_at(1.0)) {
        (Some(n), Some(f)) => (n, f),
        _ => return Err("fig6.csv lacks the 10 cm or 100 cm row".into()),
    };
    if far >= near {
        return Err(format!("median vs dual does not shrink: {near:.4} dB at 10 cm, {far:.4} dB at 100 cm"));
    }

    let fig7 = read_csv(&dir("fig7").join("fig7.csv"))?;
    let rows: Vec<_> = fig7
        .iter()
        .map(|r| (r["distance_m"], r["rate_dpc_bps"], r["rate_dual_bps"], r["rate_switched_bps"]))
        .collect();
    let rates = check_rates(&rows)?;

    // Invariants on every desk-scale experiment channel.
    let mut cache = PointCache::new(cfg.sweep_config(0.1));
    for &a in &cfg.alpha_deg {
        cache.get(a, cfg.fig5_distance_m);
    }
    for &d in &cfg.distance_m {
        cache.get(cfg.ray_alpha_deg, d);
    }
    let (n, bad) = hierarchy_violations(cache.all_records());
    let pose = RxPose::new(0.15, cfg.ray_alpha_deg.to_radians(), Vec3::Z).map_err(|e| e.to_string())?;
    let imag = max_ratio_imag(&assemble_channel(&cache.layout, &pose).map_err(|e| e.to_string())?);
    if bad > 0 || imag > REL_TOL {
        return Err(format!("desk scale: {bad} of {n} records unordered, x/y ratio imag {imag:.2e}"));
    }

    Ok(format!(
        "fig5+fig6+fig7 in {:.2} s (< 30 s), CSVs thread-independent; median vs dual {near:.4} -> {far:.4} dB; {rates}; {n} records ordered",
        elapsed.as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let cfg = reference_config();
    let mut cache = PointCache::new(cfg.sweep_config(1.0));

    let mut outcomes: Vec<(u8, &str, Outcome)> = Vec::new();
    let mut record = |id, name, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        eprintln!("  criterion {id} evaluated in {:.1} s", t.elapsed().as_secs_f64());
        outcomes.push((id, name, out));
    };
    record(1, "alpha sweep medians (full scale)", &mut || criterion_1(&cfg, &mut cache));
    record(2, "far-field improvement vanishes", &mut || criterion_2(&cfg, &mut cache));
    record(3, "polarization spread near vs far", &mut || criterion_3(&cfg, &cache.layout.clone()));
    record(4, "ergodic rate ordering", &mut || criterion_4(&cfg, &mut cache));
    record(5, "narrowband delay spread", &mut criterion_5);
    record(6, "closed form vs grid search", &mut criterion_6);
    record(7, "invariant suite", &mut || criterion_7(&cfg, &cache));
    record(8, "desk-scale smoke run", &mut || criterion_8(&cfg));

    let mut failed = 0;
    for (id, name, out) in &outcomes {
        match out {
            Ok(detail) => println!("criterion {id} PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
