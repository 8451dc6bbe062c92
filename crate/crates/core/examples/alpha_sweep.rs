//! DPC improvement over switched and dual polarization versus alpha at
//! d = 10 cm, 648 receive orientations per point.
//!
//! `cargo run --release --example alpha_sweep [scale]`

use std::time::Instant;

use dpc_focus::experiments::{improvement_stats, orientation_sweep, Baseline, ImprovementPoint, SweepConfig};

fn main() -> dpc_focus::Result<()> {
    let scale: f64 = std::env::args().nth(1).map_or(1.0, |s| s.parse().expect("scale is a number"));
    let mut cfg = SweepConfig::reference();
    cfg.radius *= scale;
    let layout = cfg.layout()?;
    let budget = cfg.budget()?;
    let grid = cfg.grid()?;
    let distance = 0.1;
    println!("R = {} m, N_tx = {}, {} orientations", cfg.radius, layout.len(), grid.len());
    println!("alpha   vs switched (q1 / median / q3)    vs dual (q1 / median / q3)");

    let mut pooled = Vec::new();
    let start = Instant::now();
    for &alpha in &cfg.alpha_values {
        let records = orientation_sweep(&layout, alpha, distance, &budget, &grid)?;
        let p = ImprovementPoint::from_records(alpha, distance, &records)?;
        let (s, d) = (p.vs_switched, p.vs_dual);
        println!(
            "{:5.0}   {:6.3} / {:6.3} / {:6.3} dB         {:6.3} / {:6.3} / {:6.3} dB",
            alpha.to_degrees(),
            s.lower_quartile,
            s.median,
            s.upper_quartile,
            d.lower_quartile,
            d.median,
            d.upper_quartile
        );
        pooled.extend(records);
    }
    println!(
        "pooled medians: {:.3} dB vs switched, {:.3} dB vs dual ({} samples, {:.1?})",
        improvement_stats(&pooled, Baseline::Switched)?.median,
        improvement_stats(&pooled, Baseline::Dual)?.median,
        pooled.len(),
        start.elapsed()
    );
    Ok(())
}
