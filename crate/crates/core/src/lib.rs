//! Rossby and drift-acoustic waves in rapidly rotating Bose-Einstein
//! condensates: linear dispersion, Thomas-Fermi equilibria of the
//! rotating trap, stationary axisymmetric structures and a pseudo-spectral
//! nonlinear wave model with resonant-triad tools.
//!
//! Internal "wave units" set r0 = 1, c_s = 1 and 2Ω = 1. Equilibrium
//! quantities use trap units (a_ho, ħω⊥, ω⊥).

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod dispersion;
pub mod equilibrium;
pub mod error;
pub mod par;
pub mod params;
pub mod spectral;
pub mod stationary;

pub use dispersion::{group_velocity, omega, ModelParams, WaveVector};
pub use equilibrium::{tf_profile, tf_radii, TfEquilibrium};
pub use error::{Error, Result};
pub use params::{derive_scales, DerivedScales, PhysicalParams, TrapParams, UnitSystem};
