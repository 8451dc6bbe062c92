//! Builds the polarized channel for a few receive-dipole orientations and
//! shows how each factor contributes.
//!
//! `cargo run --release --example channel_basics`

use std::f64::consts::PI;

use dpc_focus::channel::{dipole_pattern, impinging_field_dir, polarized_gain, unpolarized_gain};
use dpc_focus::constants::wavelength;
use dpc_focus::{assemble_channel, build_circular_array, RxPose, Vec3};

fn main() -> dpc_focus::Result<()> {
    let lambda = wavelength(300e9);
    let dipole = lambda / 2.0;

    // One ray: x-dipole at the origin, receiver 15 cm away at 30 degrees.
    let p = Vec3::new(0.15 * (PI / 6.0).sin(), 0.0, 0.15 * (PI / 6.0).cos());
    let p_hat = p.normalize()?;
    let h_up = unpolarized_gain(p, lambda)?;
    println!("|h_up|            = {:.6e}", h_up.norm());
    println!("g_tx (x dipole)   = {:.6}", dipole_pattern(Vec3::X.dot(p_hat).acos(), 0.5));
    println!("e_hat (x dipole)  = {:?}", impinging_field_dir(Vec3::X, p_hat).direction);
    for (name, v) in [("x", Vec3::X), ("y", Vec3::Y), ("z", Vec3::Z)] {
        let h = polarized_gain(Vec3::X, v, p, lambda, dipole)?;
        println!("h_pol, RX along {name} = {:+.4e} {:+.4e}j  (|h| / |h_up| = {:.4})", h.re, h.im, h.norm() / h_up.norm());
    }

    // Whole array: the x and y coefficients of each antenna are in phase or
    // anti-phase, whatever the receive orientation.
    let layout = build_circular_array(0.01, lambda)?;
    let v = Vec3::new(0.3, -0.4, 0.866).normalize()?;
    let channel = assemble_channel(&layout, &RxPose::new(0.05, PI / 6.0, v)?)?;
    let worst = channel
        .h_x
        .iter()
        .zip(&channel.h_y)
        .filter(|(a, b)| a.norm() > 0.0 && b.norm() > 0.0)
        .map(|(a, b)| (a / b).im.abs() / (a / b).norm())
        .fold(0.0, f64::max);
    println!("\n{} antennas, max |Im(h_x/h_y)| / |h_x/h_y| = {worst:.2e}", layout.len());
    Ok(())
}
