//! Median DPC improvement versus transceiver distance at alpha = 30 deg.
//!
//! `cargo run --release --example distance_sweep [scale]`

use dpc_focus::experiments::{distance_sweep, Baseline, SweepConfig};

fn main() -> dpc_focus::Result<()> {
    let scale: f64 = std::env::args().nth(1).map_or(1.0, |s| s.parse().expect("scale is a number"));
    let mut cfg = SweepConfig::reference();
    cfg.radius *= scale;
    let layout = cfg.layout()?;
    let sweep = distance_sweep(
        &layout,
        30f64.to_radians(),
        &cfg.distance_values,
        &cfg.budget()?,
        &cfg.grid()?,
    )?;
    println!("R = {} m, N_tx = {}", cfg.radius, layout.len());
    println!("  d [m]   median vs switched   median vs dual");
    let (sw, dp) = (sweep.medians(Baseline::Switched), sweep.medians(Baseline::Dual));
    for ((p, s), d) in sweep.points.iter().zip(sw).zip(dp) {
        println!("  {:5.2}   {s:14.3} dB   {d:11.3} dB", p.distance);
    }
    Ok(())
}
