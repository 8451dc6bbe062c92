//! Physical constants (SI).

/// Propagation speed, m/s. The rounded value `3e8` is used throughout so
/// that a 300 GHz carrier has a wavelength of exactly 1 mm.
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Reference noise temperature, K.
pub const REFERENCE_TEMPERATURE: f64 = 290.0;

/// Free-space wavelength for a carrier frequency in hertz.
pub fn wavelength(carrier_frequency: f64) -> f64 {
    SPEED_OF_LIGHT / carrier_frequency
}

/// Thermal noise power `k_B * T0 * B` in watts.
pub fn thermal_noise_power(bandwidth: f64) -> f64 {
    BOLTZMANN * REFERENCE_TEMPERATURE * bandwidth
}
