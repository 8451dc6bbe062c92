//! Compares the per-antenna polarization-controlled beamformer with the
//! switched- and dual-polarization benchmarks for one receiver pose.
//!
//! `cargo run --release --example focusing_weights`

use std::f64::consts::PI;

use dpc_focus::beamforming::{beamformer_gain, power_constraint_error};
use dpc_focus::constants::wavelength;
use dpc_focus::{
    assemble_channel, benchmark_weights, build_circular_array, dpc_beamformer, evaluate_snr, LinkBudget, RxPose, Vec3,
};

fn main() -> dpc_focus::Result<()> {
    let lambda = wavelength(300e9);
    let layout = build_circular_array(0.03, lambda)?;
    let budget = LinkBudget::thermal(1e-3, 100e6)?;
    let v = Vec3::new(1.0, 1.0, 1.0).normalize()?;
    let pose = RxPose::new(0.05, PI / 6.0, v)?;

    let channel = assemble_channel(&layout, &pose)?;
    let opt = dpc_beamformer(&channel);
    let (bx, by) = benchmark_weights(&channel);
    println!("N_tx = {}", layout.len());
    println!("per-antenna power error    = {:.1e}", power_constraint_error(&opt));
    println!("|h_x^T f_x + h_y^T f_y|     = {:.6e}", beamformer_gain(&channel, &opt)?);
    println!("benchmark weight magnitude = {:.6e}", bx[0].norm().max(by[0].norm()));

    let snr = evaluate_snr(&channel, &budget);
    let db = |x: f64| 10.0 * x.log10();
    println!("\nSNR  DPC      {:7.2} dB", db(snr.dpc));
    println!("SNR  dual     {:7.2} dB  ({:+.2} dB)", db(snr.dual), db(snr.dual / snr.dpc));
    println!("SNR  switched {:7.2} dB  ({:+.2} dB)", db(snr.switched), db(snr.switched / snr.dpc));
    Ok(())
}
