//! Focusing weights and received SNR for the three transmitter
//! architectures.
//!
//! * Per-antenna polarization control (DPC): every antenna drives its x and
//!   y dipoles with independent amplitude and phase, subject to
//!   `|f_x,k|^2 + |f_y,k|^2 = 1/N`.
//! * Dual polarization: phase-only conjugate weights on each dipole set,
//!   combined by maximum-ratio digital weighting of the two chains.
//! * Switched polarization: the better of the two phase-only dipole sets.

use serde::{Deserialize, Serialize};

use crate::channel::{GainSums, PolarizedChannel};
use crate::constants::thermal_noise_power;
use crate::error::{require_positive, Error, Result};
use crate::Complex;

/// Paired weight vectors for the x- and y-oriented dipoles.
#[derive(Debug, Clone, PartialEq)]
pub struct Beamformer {
    pub f_x: Vec<Complex>,
    pub f_y: Vec<Complex>,
}

impl Beamformer {
    pub fn len(&self) -> usize {
        self.f_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_x.is_empty()
    }

    /// `|f_x,k|^2 + |f_y,k|^2` for every antenna.
    pub fn antenna_powers(&self) -> Vec<f64> {
        self.f_x.iter().zip(&self.f_y).map(|(x, y)| x.norm_sqr() + y.norm_sqr()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    transmit_power: f64,
    noise_power: f64,
}

impl LinkBudget {
    pub fn new(transmit_power: f64, noise_power: f64) -> Result<Self> {
        require_positive("transmit_power", transmit_power)?;
        require_positive("noise_power", noise_power)?;
        Ok(LinkBudget {
            transmit_power,
            noise_power,
        })
    }

    /// Budget with thermal noise `k_B * 290 K * bandwidth`.
    pub fn thermal(transmit_power: f64, bandwidth: f64) -> Result<Self> {
        require_positive("bandwidth", bandwidth)?;
        LinkBudget::new(transmit_power, thermal_noise_power(bandwidth))
    }

    pub fn transmit_power(&self) -> f64 {
        self.transmit_power
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    /// `P_tx / sigma^2`.
    pub fn snr_scale(&self) -> f64 {
        self.transmit_power / self.noise_power
    }
}

/// Linear-scale received SNR of each architecture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrTriple {
    pub dpc: f64,
    pub dual: f64,
    pub switched: f64,
}

impl SnrTriple {
    /// SNRs from per-antenna magnitude sums.
    ///
    /// With conjugate-phase weights every term of `h^T f` is real and
    /// positive, so `gamma_x = sum|h_x,k| / sqrt(N)` and the DPC gain is
    /// `sum sqrt(|h_x,k|^2 + |h_y,k|^2) / sqrt(N)`.
    pub fn from_gain_sums(sums: &GainSums, budget: &LinkBudget) -> Self {
        let scale = budget.snr_scale() / sums.elements as f64;
        let gx2 = sums.x * sums.x;
        let gy2 = sums.y * sums.y;
        SnrTriple {
            dpc: scale * sums.joint * sums.joint,
            dual: scale * (gx2 + gy2),
            switched: scale * gx2.max(gy2),
        }
    }

    /// `10 log10(dpc / baseline)`.
    pub fn improvement_db(&self, baseline: f64) -> f64 {
        10.0 * (self.dpc / baseline).log10()
    }
}

/// Phase of `z`, with the phase of zero taken as 0.
pub fn phase(z: Complex) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

fn unit_phasor(angle: f64) -> Complex {
    let (s, c) = angle.sin_cos();
    Complex::new(c, s)
}

/// Optimal per-antenna polarization-controlled weights.
///
/// Each dipole gets the conjugate phase of its channel; the amplitudes at
/// antenna `k` are `(|h_x,k|, |h_y,k|)` rescaled to power `1/N`. An antenna
/// whose two channel entries are both zero puts all its power on the x
/// dipole.
pub fn dpc_beamformer(channel: &PolarizedChannel) -> Beamformer {
    let n = channel.len() as f64;
    let (f_x, f_y) = channel
        .h_x
        .iter()
        .zip(&channel.h_y)
        .map(|(&hx, &hy)| {
            let (ax, ay) = (hx.norm(), hy.norm());
            let total = ax.hypot(ay);
            if total == 0.0 {
                return (Complex::new(1.0 / n.sqrt(), 0.0), Complex::new(0.0, 0.0));
            }
            let scale = 1.0 / (n.sqrt() * total);
            (
                unit_phasor(-phase(hx)) * (ax * scale),
                unit_phasor(-phase(hy)) * (ay * scale),
            )
        })
        .unzip();
    Beamformer { f_x, f_y }
}

/// Phase-only conjugate weights `exp(-j angle(h)) / sqrt(N)` for each
/// dipole set, as used by the switched- and dual-polarization arrays.
pub fn benchmark_weights(channel: &PolarizedChannel) -> (Vec<Complex>, Vec<Complex>) {
    let norm = 1.0 / (channel.len() as f64).sqrt();
    let weights = |h: &[Complex]| h.iter().map(|&z| unit_phasor(-phase(z)) * norm).collect();
    (weights(&channel.h_x), weights(&channel.h_y))
}

/// `sum_k a_k b_k` (no conjugation).
pub fn bilinear(a: &[Complex], b: &[Complex]) -> Complex {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `|h_x^T f_x + h_y^T f_y|`.
pub fn focusing_gain(channel: &PolarizedChannel, f_x: &[Complex], f_y: &[Complex]) -> f64 {
    (bilinear(&channel.h_x, f_x) + bilinear(&channel.h_y, f_y)).norm()
}

/// Received SNR of all three architectures, computed from the explicit
/// weight vectors.
pub fn evaluate_snr(channel: &PolarizedChannel, budget: &LinkBudget) -> SnrTriple {
    let scale = budget.snr_scale();
    let (bx, by) = benchmark_weights(channel);
    let gx2 = bilinear(&channel.h_x, &bx).norm_sqr();
    let gy2 = bilinear(&channel.h_y, &by).norm_sqr();
    let opt = dpc_beamformer(channel);
    let g = focusing_gain(channel, &opt.f_x, &opt.f_y);
    SnrTriple {
        dpc: scale * g * g,
        dual: scale * (gx2 + gy2),
        switched: scale * gx2.max(gy2),
    }
}

/// Polarization of the wave radiated by one antenna.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PolarizationState {
    /// Linear polarization at this angle from the x axis, in `(-pi/2, pi/2]`.
    Linear(f64),
    /// The x and y weights are not in phase or anti-phase.
    NonLinear,
    /// Both weights are zero.
    Undefined,
}

impl PolarizationState {
    pub fn angle(&self) -> Option<f64> {
        match *self {
            PolarizationState::Linear(a) => Some(a),
            _ => None,
        }
    }
}

const LINEARITY_TOLERANCE: f64 = 1e-6;

/// Per-antenna polarization angle `atan(f_y,k / f_x,k)`, as an unsigned
/// axis folded into `(-pi/2, pi/2]`.
pub fn polarization_angle_map(bf: &Beamformer) -> Vec<PolarizationState> {
    bf.f_x
        .iter()
        .zip(&bf.f_y)
        .map(|(&fx, &fy)| {
            let (ax, ay) = (fx.norm(), fy.norm());
            if ax == 0.0 && ay == 0.0 {
                return PolarizationState::Undefined;
            }
            if ax == 0.0 {
                return PolarizationState::Linear(std::f64::consts::FRAC_PI_2);
            }
            if ay == 0.0 {
                return PolarizationState::Linear(0.0);
            }
            // f_y conj(f_x) is real for in-phase or anti-phase weights
            let cross = fy * fx.conj();
            if cross.im.abs() > LINEARITY_TOLERANCE * ax * ay {
                return PolarizationState::NonLinear;
            }
            let angle = (ay.copysign(cross.re) / ax).atan();
            PolarizationState::Linear(if angle <= -std::f64::consts::FRAC_PI_2 {
                std::f64::consts::FRAC_PI_2
            } else {
                angle
            })
        })
        .collect()
}

/// Per-antenna power check: max relative deviation from `1/N`.
pub fn power_constraint_error(bf: &Beamformer) -> f64 {
    let target = 1.0 / bf.len() as f64;
    bf.antenna_powers()
        .into_iter()
        .map(|p| (p - target).abs() / target)
        .fold(0.0, f64::max)
}

pub(crate) fn check_same_len(channel: &PolarizedChannel, bf: &Beamformer) -> Result<()> {
    if channel.len() != bf.len() {
        return Err(Error::LengthMismatch(format!(
            "channel has {} antennas, beamformer {}",
            channel.len(),
            bf.len()
        )));
    }
    Ok(())
}

/// `|h_x^T f_x + h_y^T f_y|` for a beamformer of matching length.
pub fn beamformer_gain(channel: &PolarizedChannel, bf: &Beamformer) -> Result<f64> {
    check_same_len(channel, bf)?;
    Ok(focusing_gain(channel, &bf.f_x, &bf.f_y))
}
