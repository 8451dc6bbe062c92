//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use dpc_focus::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub const PHASE_STEPS: usize = 360;
pub const SPLIT_STEPS: usize = 1000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `r e^{j phi}` with `r` in (0, 1] and uniform phase.
pub fn random_complex(rng: &mut impl Rng) -> Complex {
    let r = 1.0 - rng.random::<f64>();
    Complex::from_polar(r, rng.random_range(-PI..PI))
}

pub fn random_channel(rng: &mut impl Rng, n: usize) -> (Vec<Complex>, Vec<Complex>) {
    let hx = (0..n).map(|_| random_complex(rng)).collect();
    let hy = (0..n).map(|_| random_complex(rng)).collect();
    (hx, hy)
}

/// Best `cos(arg(h) + phi - theta)` over the 1 degree phase grid.
fn best_alignment(h: Complex, theta: f64) -> f64 {
    let step = 2.0 * PI / PHASE_STEPS as f64;
    (0..PHASE_STEPS)
        .map(|m| (h.arg() + m as f64 * step - theta).cos())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Best `Re(e^{-j theta} (h_x f_x + h_y f_y))` for one antenna with power
/// `1/n`, over the phase and power-split grids.
fn best_antenna_term(hx: Complex, hy: Complex, n: usize, theta: f64) -> f64 {
    let cx = hx.norm() * best_alignment(hx, theta);
    let cy = hy.norm() * best_alignment(hy, theta);
    (0..=SPLIT_STEPS)
        .map(|i| {
            let s = i as f64 / SPLIT_STEPS as f64;
            ((s / n as f64).sqrt() * cx) + (((1.0 - s) / n as f64).sqrt() * cy)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Maximum of `|h_x^T f_x + h_y^T f_y|` over all weights with per-antenna
/// power `1/N`, phases on a 1 degree grid and power splits on a 1e-3 grid.
///
/// For a fixed direction `theta` of the sum the search separates per
/// antenna. The grid is invariant under a 1 degree rotation, so scanning
/// `theta` across one grid step covers every direction.
pub fn grid_search_gain(hx: &[Complex], hy: &[Complex]) -> f64 {
    let n = hx.len();
    let step = 2.0 * PI / PHASE_STEPS as f64;
    const THETA_SAMPLES: usize = 32;
    (0..THETA_SAMPLES)
        .map(|t| {
            let theta = step * t as f64 / THETA_SAMPLES as f64;
            hx.iter().zip(hy).map(|(&a, &b)| best_antenna_term(a, b, n, theta)).sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Joint exhaustive search for a single antenna. The x phase is pinned to
/// zero since a common phase rotation leaves the magnitude unchanged.
pub fn brute_force_single(hx: Complex, hy: Complex) -> f64 {
    let step = 2.0 * PI / PHASE_STEPS as f64;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=SPLIT_STEPS {
        let s = i as f64 / SPLIT_STEPS as f64;
        let fx = s.sqrt();
        for m in 0..PHASE_STEPS {
            let fy = Complex::from_polar((1.0 - s).sqrt(), m as f64 * step);
            best = best.max((hx * fx + hy * fy).norm());
        }
    }
    best
}
