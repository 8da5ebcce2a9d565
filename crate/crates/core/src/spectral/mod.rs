//! Fourier-space nonlinear wave dynamics in wave units (r0 = 1, c_s = 1,
//! 2Ω = 1).
//!
//! The real field φ = Σ φ_k e^{ik·x} is represented by its retained lattice
//! modes with φ_{−k} = conj(φ_k). The background density gradient is frozen
//! into a constant drift speed v_R entering only through ω_k.

pub mod coupling;
pub mod grid;
pub mod init;
pub mod integrate;
pub mod model;
pub mod triad;

pub use coupling::coupling;
pub use grid::{build_mode_grid, LatticeIndex, ModeGrid, ModeSet};
pub use init::{random_spectrum, single_mode};
pub use integrate::{integrate, integrate_with, IntegrationReport, STABILITY_LIMIT};
pub use model::{Convolution, SpectralModel, SpectralState};
pub use triad::{
    decay_channel, find_resonant_triads, integrate_triad, triad_couplings, DecayChannel, Triad,
    TriadCouplings, TriadSearch, TriadTrajectory,
};
