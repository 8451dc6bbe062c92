//! Positions, directions and the transmit lattice.
//!
//! The transmit array lies on the `z = 0` plane with its centre at the
//! origin. The receiver centre is kept on the `xz` plane and is described by
//! its distance `d` and the angle `alpha` it makes with the `z` axis.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Real 3-vector. Used for positions in meters and for unit directions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector along `self`. Fails on the zero vector.
    pub fn normalize(self) -> Result<Vec3> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Ok(self * (1.0 / n))
        } else {
            Err(Error::Degenerate("cannot normalize a zero-length vector"))
        }
    }

    /// Rotation by `angle` radians about the `z` axis.
    pub fn rotate_z(self, angle: f64) -> Vec3 {
        let (s, c) = angle.sin_cos();
        Vec3::new(c * self.x - s * self.y, s * self.x + c * self.y, self.z)
    }

    /// True when the norm is within `1e-12` of one.
    pub fn is_unit(self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-12
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a.dot(b)
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    a.cross(b)
}

pub fn norm(a: Vec3) -> f64 {
    a.norm()
}

pub fn normalize(a: Vec3) -> Result<Vec3> {
    a.normalize()
}

/// Identifies the element ordering a channel vector was computed against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayoutId {
    pub elements: usize,
    pub radius_bits: u64,
    pub wavelength_bits: u64,
}

/// Transmit array: element positions (all on `z = 0`) plus the carrier
/// wavelength and the dipole length shared by every TX and the RX dipole.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayLayout {
    positions: Vec<Vec3>,
    wavelength: f64,
    dipole_length: f64,
    radius: f64,
}

impl ArrayLayout {
    /// Arbitrary planar layout. The bounding radius is the largest element
    /// distance from the origin.
    pub fn from_positions(positions: Vec<Vec3>, wavelength: f64, dipole_length: f64) -> Result<Self> {
        require_positive("wavelength", wavelength)?;
        require_positive("dipole_length", dipole_length)?;
        if positions.is_empty() {
            return Err(Error::invalid("positions", "array needs at least one element"));
        }
        if let Some(p) = positions.iter().find(|p| p.z != 0.0) {
            return Err(Error::invalid("positions", format!("element off the z = 0 plane: {p:?}")));
        }
        let mut sorted: Vec<(u64, u64)> = positions.iter().map(|p| (p.x.to_bits(), p.y.to_bits())).collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("positions", "element positions must be distinct"));
        }
        let radius = positions.iter().map(|p| p.norm()).fold(0.0, f64::max);
        Ok(ArrayLayout {
            positions,
            wavelength,
            dipole_length,
            radius,
        })
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn dipole_length(&self) -> f64 {
        self.dipole_length
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn id(&self) -> LayoutId {
        LayoutId {
            elements: self.positions.len(),
            radius_bits: self.radius.to_bits(),
            wavelength_bits: self.wavelength.to_bits(),
        }
    }
}

/// Square lattice of pitch `wavelength / 2` centred on the origin, keeping
/// every point with `|r| <= radius` (boundary included).
///
/// Elements are ordered row-major: ascending `y`, then ascending `x`. The
/// resulting index is the antenna index `k` used by every channel and
/// beamformer vector.
pub fn build_circular_array(radius: f64, wavelength: f64) -> Result<ArrayLayout> {
    require_positive("radius", radius)?;
    require_positive("wavelength", wavelength)?;
    let pitch = wavelength / 2.0;
    let reach = (radius / pitch).floor() as i64 + 1;
    let limit = radius * radius * (1.0 + 1e-12);

    let mut positions = Vec::new();
    for iy in -reach..=reach {
        for ix in -reach..=reach {
            let p = Vec3::new(ix as f64 * pitch, iy as f64 * pitch, 0.0);
            if p.x * p.x + p.y * p.y <= limit {
                positions.push(p);
            }
        }
    }
    let mut layout = ArrayLayout::from_positions(positions, wavelength, pitch)?;
    layout.radius = radius;
    Ok(layout)
}

/// Receiver placement at distance `d` and angle `alpha` from boresight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RxPose {
    distance: f64,
    alpha: f64,
    v_hat: Vec3,
}

impl RxPose {
    pub fn new(distance: f64, alpha: f64, v_hat: Vec3) -> Result<Self> {
        require_positive("distance", distance)?;
        if !alpha.is_finite() {
            return Err(Error::invalid("alpha", "must be finite"));
        }
        if !v_hat.is_unit() {
            return Err(Error::invalid("v_hat", format!("must be a unit vector, norm = {}", v_hat.norm())));
        }
        Ok(RxPose { distance, alpha, v_hat })
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn v_hat(&self) -> Vec3 {
        self.v_hat
    }

    pub fn with_v_hat(self, v_hat: Vec3) -> Result<Self> {
        RxPose::new(self.distance, self.alpha, v_hat)
    }

    pub fn position(&self) -> Vec3 {
        rx_position(self.distance, self.alpha)
    }
}

/// Receiver centre `(d sin a, 0, d cos a)`.
pub fn rx_position(distance: f64, alpha: f64) -> Vec3 {
    let (s, c) = alpha.sin_cos();
    Vec3::new(distance * s, 0.0, distance * c)
}

/// Receive-dipole directions on a regular azimuth/elevation grid.
///
/// Azimuth covers `[0, 2pi)` and elevation `[0, pi)`, so the default 10
/// degree steps give 36 x 18 = 648 directions. Ordering is elevation-major.
/// All 36 entries at zero elevation are `+z`.
pub fn orientation_grid(azimuth_step: f64, elevation_step: f64) -> Result<Vec<Vec3>> {
    let n_az = steps_in("azimuth_step", 2.0 * PI, azimuth_step)?;
    let n_el = steps_in("elevation_step", PI, elevation_step)?;
    let mut out = Vec::with_capacity(n_az * n_el);
    for ie in 0..n_el {
        let (se, ce) = (ie as f64 * elevation_step).sin_cos();
        for ia in 0..n_az {
            let (sa, ca) = (ia as f64 * azimuth_step).sin_cos();
            out.push(Vec3::new(se * ca, se * sa, ce));
        }
    }
    Ok(out)
}

/// Orientation grid with 10 degree steps on both axes.
pub fn default_orientation_grid() -> Vec<Vec3> {
    let step = 10f64.to_radians();
    orientation_grid(step, step).expect("10 degrees divides both ranges")
}

fn steps_in(name: &'static str, range: f64, step: f64) -> Result<usize> {
    require_positive(name, step)?;
    let n = (range / step).round();
    if n < 1.0 || ((n * step) - range).abs() > 1e-9 * range {
        return Err(Error::invalid(name, format!("step {step} does not divide {range}")));
    }
    Ok(n as usize)
}
