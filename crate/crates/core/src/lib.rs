//! Polarized near-field line-of-sight channels between a planar array of
//! crossed dipoles and a single receive dipole, together with the
//! per-antenna polarization-controlled focusing beamformer and the
//! switched- and dual-polarization benchmarks it is compared against.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: 3-vectors, the circular half-wavelength lattice, receiver
//!   placement and the receive-dipole orientation grid.
//! * [`channel`]: dipole patterns, impinging field directions and the
//!   assembled `h_x`/`h_y` channel vectors.
//! * [`beamforming`]: optimal focusing weights, benchmark weights, SNRs and
//!   per-antenna polarization angles.
//! * [`experiments`]: orientation/angle/distance sweeps, box-plot
//!   statistics, ergodic rates and the narrowband validity check.
//! * [`cli`]: config parsing and the scenario runner behind the
//!   `dpc-focus` binary.

pub mod beamforming;
pub mod channel;
pub mod cli;
pub mod constants;
pub mod error;
pub mod experiments;
pub mod geometry;

pub use beamforming::{
    benchmark_weights, dpc_beamformer, evaluate_snr, polarization_angle_map, Beamformer,
    LinkBudget, PolarizationState, SnrTriple,
};
pub use channel::{assemble_channel, ChannelGeometry, PolarizedChannel};
pub use error::{Error, Result};
pub use experiments::{
    distance_sweep, ergodic_rate, improvement_stats, narrowband_check, orientation_sweep,
    Baseline, DistributionStats, SweepConfig, SweepRecord,
};
pub use geometry::{build_circular_array, orientation_grid, rx_position, ArrayLayout, RxPose, Vec3};

/// Complex scalar used for channel coefficients and antenna weights.
pub type Complex = num_complex::Complex64;
