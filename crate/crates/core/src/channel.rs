//! Polarized line-of-sight channel between each transmit dipole and the
//! receive dipole.
//!
//! A single coefficient is the product of four terms: the free-space
//! unpolarized gain, the TX dipole pattern towards the receiver, the RX
//! dipole pattern towards the transmitter and the signed projection of the
//! receive dipole onto the impinging field direction.
//!
//! Orientation sweeps evaluate the same geometry for hundreds of receive
//! dipole directions, so [`ChannelGeometry`] caches everything that depends
//! only on positions and leaves the receive-dipole dependent factors for
//! [`ChannelGeometry::channel_for`] and [`ChannelGeometry::gain_sums`].

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{require_positive, Error, Result};
use crate::geometry::{ArrayLayout, LayoutId, RxPose, Vec3};
use crate::Complex;

const SIN_THETA_FLOOR: f64 = 1e-9;
const FIELD_DEGENERACY: f64 = 1e-12;

/// `lambda / (4 pi |p|) * exp(-j 2 pi |p| / lambda)`.
pub fn unpolarized_gain(p_vec: Vec3, wavelength: f64) -> Result<Complex> {
    let dist = p_vec.norm();
    if dist == 0.0 {
        return Err(Error::Degenerate("transmitter and receiver are co-located"));
    }
    Ok(free_space(dist, wavelength))
}

#[inline]
fn free_space(dist: f64, wavelength: f64) -> Complex {
    let (s, c) = (2.0 * PI * dist / wavelength).sin_cos();
    Complex::new(c, -s) * (wavelength / (4.0 * PI * dist))
}

/// Normalized far-field pattern of a centre-fed dipole of length
/// `l_over_lambda` wavelengths, at angle `theta` from the dipole axis.
///
/// Returns 0 on the axis (`sin theta < 1e-9`).
pub fn dipole_pattern(theta: f64, l_over_lambda: f64) -> f64 {
    let s = theta.sin();
    if s.abs() < SIN_THETA_FLOOR {
        return 0.0;
    }
    ((PI * l_over_lambda * theta.cos()).cos() - (PI * l_over_lambda).cos()) / s
}

/// Same pattern parameterised by `cos theta`, with `theta` in `[0, pi]`.
#[derive(Debug, Clone, Copy)]
struct DipolePattern {
    k: f64,
    offset: f64,
}

impl DipolePattern {
    fn new(l_over_lambda: f64) -> Self {
        DipolePattern {
            k: PI * l_over_lambda,
            offset: (PI * l_over_lambda).cos(),
        }
    }

    #[inline]
    fn eval(&self, cos_theta: f64) -> f64 {
        let sin2 = 1.0 - cos_theta * cos_theta;
        if sin2 < SIN_THETA_FLOOR * SIN_THETA_FLOOR {
            return 0.0;
        }
        ((self.k * cos_theta).cos() - self.offset) / sin2.sqrt()
    }
}

/// Unit direction of the field radiated by a dipole along `u_hat`,
/// observed along `p_hat`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpingingField {
    pub direction: Vec3,
    /// Set when `u_hat` is parallel to `p_hat`; `direction` is then zero.
    pub degenerate: bool,
}

/// `p x (u x p) / |p x (u x p)|`.
pub fn impinging_field_dir(u_hat: Vec3, p_hat: Vec3) -> ImpingingField {
    let e = p_hat.cross(u_hat.cross(p_hat));
    let n = e.norm();
    if n < FIELD_DEGENERACY {
        ImpingingField {
            direction: Vec3::ZERO,
            degenerate: true,
        }
    } else {
        ImpingingField {
            direction: e * (1.0 / n),
            degenerate: false,
        }
    }
}

/// Channel between one TX dipole along `u_hat` and the RX dipole along
/// `v_hat`, with `p_vec` the RX position relative to the TX dipole.
///
/// Both dipoles have length `dipole_length`.
pub fn polarized_gain(
    u_hat: Vec3,
    v_hat: Vec3,
    p_vec: Vec3,
    wavelength: f64,
    dipole_length: f64,
) -> Result<Complex> {
    let h_up = unpolarized_gain(p_vec, wavelength)?;
    let p_hat = p_vec.normalize()?;
    let l = dipole_length / wavelength;
    let theta_tx = u_hat.dot(p_hat).clamp(-1.0, 1.0).acos();
    let theta_rx = PI - v_hat.dot(p_hat).clamp(-1.0, 1.0).acos();
    let g_tx = dipole_pattern(theta_tx, l);
    let g_rx = dipole_pattern(theta_rx, l);
    let field = impinging_field_dir(u_hat, p_hat);
    if field.degenerate {
        return Ok(Complex::new(0.0, 0.0));
    }
    let beta = v_hat.dot(field.direction);
    Ok(h_up * (g_tx * g_rx * beta))
}

/// Channel vectors from the x-oriented and y-oriented TX dipoles.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizedChannel {
    pub h_x: Vec<Complex>,
    pub h_y: Vec<Complex>,
    pub layout: Option<LayoutId>,
}

impl PolarizedChannel {
    /// Channel not tied to a particular layout, e.g. synthetic test data.
    pub fn new(h_x: Vec<Complex>, h_y: Vec<Complex>) -> Result<Self> {
        if h_x.len() != h_y.len() {
            return Err(Error::LengthMismatch(format!(
                "h_x has {} entries, h_y has {}",
                h_x.len(),
                h_y.len()
            )));
        }
        if h_x.is_empty() {
            return Err(Error::Empty("a channel"));
        }
        Ok(PolarizedChannel { h_x, h_y, layout: None })
    }

    pub fn len(&self) -> usize {
        self.h_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h_x.is_empty()
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scaled(&self, factor: Complex) -> Self {
        PolarizedChannel {
            h_x: self.h_x.iter().map(|h| h * factor).collect(),
            h_y: self.h_y.iter().map(|h| h * factor).collect(),
            layout: self.layout,
        }
    }
}

/// Position-only terms of one antenna, with `|h_up|` folded into the
/// field vectors.
#[derive(Debug, Clone, Copy)]
struct AntennaTerms {
    p_hat: Vec3,
    /// `|h_up| * g_tx * e_hat` for the x-oriented dipole.
    field_x: Vec3,
    field_y: Vec3,
}

/// Per-antenna sums needed for the three SNR expressions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GainSums {
    /// `sum_k |h_x,k|`
    pub x: f64,
    /// `sum_k |h_y,k|`
    pub y: f64,
    /// `sum_k sqrt(|h_x,k|^2 + |h_y,k|^2)`
    pub joint: f64,
    pub elements: usize,
}

/// Antennas per block in [`ChannelGeometry::gain_sums_many`]; 72 bytes each,
/// so a block stays cache resident while every orientation visits it.
const ANTENNA_BLOCK: usize = 2048;

/// Position-dependent part of the channel for one receiver location.
#[derive(Debug, Clone)]
pub struct ChannelGeometry {
    terms: Vec<AntennaTerms>,
    /// `exp(-j 2 pi |p_k| / lambda)`
    phasors: Vec<Complex>,
    pattern: DipolePattern,
    layout: LayoutId,
}

impl ChannelGeometry {
    /// Precomputes path vectors, free-space gains, TX patterns and impinging
    /// field directions for both dipole orientations at every antenna.
    pub fn new(layout: &ArrayLayout, rx_center: Vec3) -> Result<Self> {
        let wavelength = layout.wavelength();
        let pattern = DipolePattern::new(layout.dipole_length() / wavelength);
        let (terms, phasors) = layout
            .positions()
            .par_iter()
            .enumerate()
            .map(|(index, &r)| {
                let p = rx_center - r;
                let dist = p.norm();
                if dist == 0.0 {
                    return Err(Error::CoLocated { index });
                }
                let p_hat = p * (1.0 / dist);
                let h_up = free_space(dist, wavelength);
                let magnitude = h_up.norm();
                let field = |u: Vec3| {
                    let e = impinging_field_dir(u, p_hat);
                    e.direction * (magnitude * pattern.eval(u.dot(p_hat)))
                };
                let terms = AntennaTerms {
                    p_hat,
                    field_x: field(Vec3::X),
                    field_y: field(Vec3::Y),
                };
                Ok((terms, h_up / magnitude))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        Ok(ChannelGeometry {
            terms,
            phasors,
            pattern,
            layout: layout.id(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `|h_up|` times RX pattern times polarization projection, for both
    /// TX dipoles.
    #[inline]
    fn rx_factors(&self, t: &AntennaTerms, v_hat: Vec3) -> (f64, f64) {
        // theta_rx = pi - acos(v.p), so cos(theta_rx) = -(v.p)
        let g_rx = self.pattern.eval(-v_hat.dot(t.p_hat));
        (g_rx * v_hat.dot(t.field_x), g_rx * v_hat.dot(t.field_y))
    }

    /// Full channel vectors for receive dipole direction `v_hat`.
    pub fn channel_for(&self, v_hat: Vec3) -> PolarizedChannel {
        let (h_x, h_y) = self
            .terms
            .iter()
            .zip(&self.phasors)
            .map(|(t, &phasor)| {
                let (fx, fy) = self.rx_factors(t, v_hat);
                (phasor * fx, phasor * fy)
            })
            .unzip();
        PolarizedChannel {
            h_x,
            h_y,
            layout: Some(self.layout),
        }
    }

    /// Magnitude sums for `v_hat`, accumulated in antenna order.
    pub fn gain_sums(&self, v_hat: Vec3) -> GainSums {
        self.gain_sums_many(&[v_hat])[0]
    }

    /// [`Self::gain_sums`] for several orientations at once.
    ///
    /// Antennas are visited in blocks, all orientations per block, but each
    /// orientation still accumulates in antenna order, so the results equal
    /// one-at-a-time evaluation bit for bit.
    pub fn gain_sums_many(&self, v_hats: &[Vec3]) -> Vec<GainSums> {
        let mut sums = vec![
            GainSums {
                elements: self.terms.len(),
                ..GainSums::default()
            };
            v_hats.len()
        ];
        for block in self.terms.chunks(ANTENNA_BLOCK) {
            for (acc, &v) in sums.iter_mut().zip(v_hats) {
                for t in block {
                    let (fx, fy) = self.rx_factors(t, v);
                    let (ax, ay) = (fx.abs(), fy.abs());
                    acc.x += ax;
                    acc.y += ay;
                    // plain sqrt: hypot dominates the loop otherwise
                    acc.joint += (ax * ax + ay * ay).sqrt();
                }
            }
        }
        sums
    }
}

/// Channel for receiver pose `pose`: x-dipoles give `h_x`, y-dipoles `h_y`,
/// both in layout order.
pub fn assemble_channel(layout: &ArrayLayout, pose: &RxPose) -> Result<PolarizedChannel> {
    assemble_channel_at(layout, pose.position(), pose.v_hat())
}

/// As [`assemble_channel`] but with an arbitrary receiver centre.
pub fn assemble_channel_at(layout: &ArrayLayout, rx_center: Vec3, v_hat: Vec3) -> Result<PolarizedChannel> {
    require_positive("|v_hat|", v_hat.norm())?;
    Ok(ChannelGeometry::new(layout, rx_center)?.channel_for(v_hat))
}
