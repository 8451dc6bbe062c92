//! Achievable rate averaged over receive orientations, P_tx = 1 mW,
//! B = 100 MHz, thermal noise at 290 K.
//!
//! `cargo run --release --example ergodic_rates [scale]`

use dpc_focus::experiments::{ergodic_rate, orientation_sweep, SweepConfig};

fn main() -> dpc_focus::Result<()> {
    let scale: f64 = std::env::args().nth(1).map_or(1.0, |s| s.parse().expect("scale is a number"));
    let mut cfg = SweepConfig::reference();
    cfg.radius *= scale;
    let layout = cfg.layout()?;
    let budget = cfg.budget()?;
    let grid = cfg.grid()?;
    let alpha = 30f64.to_radians();
    println!("R = {} m, N_tx = {}, noise {:.3e} W", cfg.radius, layout.len(), budget.noise_power());
    println!("  d [m]   DPC [Gb/s]   dual [Gb/s]   switched [Gb/s]   DPC/dual - 1");
    for &d in &cfg.distance_values {
        let r = ergodic_rate(&orientation_sweep(&layout, alpha, d, &budget, &grid)?, cfg.bandwidth)?;
        println!(
            "  {d:5.2}   {:10.4}   {:11.4}   {:15.4}   {:11.3}%",
            r.dpc / 1e9,
            r.dual / 1e9,
            r.switched / 1e9,
            100.0 * (r.dpc / r.dual - 1.0)
        );
    }
    Ok(())
}
