//! Boresight delay spread across the array versus the 100 MHz symbol time.
//!
//! `cargo run --example narrowband_check`

use dpc_focus::experiments::narrowband_check;

fn main() -> dpc_focus::Result<()> {
    let (radius, bandwidth) = (0.15, 100e6);
    println!("R = {radius} m, B = {bandwidth:e} Hz, threshold = {:.1} ns", 0.1 / bandwidth * 1e9);
    for i in 1..=10 {
        let d = 0.1 * i as f64;
        let r = narrowband_check(d, radius, bandwidth)?;
        println!("  d = {d:4.2} m   delay spread {:.4} ns   {}", r.delay_spread * 1e9, if r.valid { "ok" } else { "WIDEBAND" });
    }
    Ok(())
}
