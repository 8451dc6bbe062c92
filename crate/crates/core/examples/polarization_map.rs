//! Optimal per-antenna polarization angles at 15 cm and at 1 m
//! (alpha = 30 deg, receive dipole along z), with a coarse text rendering.
//!
//! `cargo run --release --example polarization_map [scale]`

use dpc_focus::experiments::{polarization_map, SweepConfig};
use dpc_focus::{RxPose, Vec3};

fn main() -> dpc_focus::Result<()> {
    let scale: f64 = std::env::args().nth(1).map_or(1.0, |s| s.parse().expect("scale is a number"));
    let mut cfg = SweepConfig::reference();
    cfg.radius *= scale;
    let layout = cfg.layout()?;
    println!("R = {} m, N_tx = {}", cfg.radius, layout.len());

    for d in [0.15, 1.0] {
        let map = polarization_map(&layout, &RxPose::new(d, 30f64.to_radians(), Vec3::Z)?)?;
        println!(
            "\nd = {d} m: angle std dev {:.2} deg, {} non-linear antennas",
            map.angle_std_dev().to_degrees(),
            map.non_linear_count()
        );
        // 11 x 11 sample of the aperture, one glyph per 22.5 degree sector
        let glyphs = ['|', '\\', '\\', '-', '-', '/', '/', '|'];
        let step = 2.0 * cfg.radius / 10.0;
        for row in (0..=10).rev() {
            let y = -cfg.radius + row as f64 * step;
            let line: String = (0..=10)
                .map(|col| {
                    let x = -cfg.radius + col as f64 * step;
                    let nearest = layout
                        .positions()
                        .iter()
                        .enumerate()
                        .min_by(|a, b| {
                            let da = (a.1.x - x).powi(2) + (a.1.y - y).powi(2);
                            let db = (b.1.x - x).powi(2) + (b.1.y - y).powi(2);
                            da.total_cmp(&db)
                        })
                        .map(|(k, p)| (k, p.x.hypot(p.y)));
                    match nearest {
                        Some((k, r)) if r <= cfg.radius && x.hypot(y) <= cfg.radius * 1.05 => {
                            match map.states[k].angle() {
                                Some(a) => {
                                    let sector = ((a.to_degrees() + 90.0) / 22.5).floor() as usize;
                                    glyphs[sector.min(7)]
                                }
                                None => '?',
                            }
                        }
                        _ => ' ',
                    }
                })
                .flat_map(|c| [c, ' '])
                .collect();
            println!("  {line}");
        }
    }
    Ok(())
}
