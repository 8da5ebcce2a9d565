//! Quadratic invariants, zonal spectra and real-space velocity fields.
//!
//! Sums over modes run over every retained k, so each ±k pair is counted
//! twice; the invariants carry a factor ½ to count each real harmonic once:
//!
//! E   = ½ Σ (1 + k²) |φ_k|²
//! Z   = ½ Σ k²(1 + k²) |φ_k|²
//! E_ξ = ½ Σ (1 + k² + ξ²k⁴/2) |φ_k|²
//!
//! E and Z are conserved by the ξ = 0 dynamics. Conservation of E_ξ for
//! ξ > 0 is not established; it is measured only.

mod field;

use serde::{Deserialize, Serialize};

use crate::spectral::{ModeSet, SpectralModel, SpectralState};

pub use field::{
    continuity_residual, drift_velocity_field, polarization_velocity_field, source_field,
    FieldSnapshot, VectorField, MIN_GRID,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub energy: f64,
    pub enstrophy: f64,
    pub energy_xi: f64,
}

pub fn energy_enstrophy(model: &SpectralModel, state: &SpectralState) -> Invariants {
    let xi = model.params().xi;
    let mut inv = Invariants {
        energy: 0.0,
        enstrophy: 0.0,
        energy_xi: 0.0,
    };
    for (k, a) in model.modes().vectors().iter().zip(&state.amplitudes) {
        let q = k.norm_sq();
        let p = 0.5 * a.norm_sqr();
        inv.energy += (1.0 + q) * p;
        inv.enstrophy += q * (1.0 + q) * p;
        inv.energy_xi += (1.0 + q + 0.5 * xi * xi * q * q) * p;
    }
    inv
}

/// Σ |φ_k|² over all retained modes.
pub fn total_power(state: &SpectralState) -> f64 {
    state.amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

/// Power summed over k_r at each zonal wavenumber, ascending in k_θ.
pub fn zonal_spectrum(modes: &ModeSet, state: &SpectralState) -> Vec<(f64, f64)> {
    let mut bins: std::collections::BTreeMap<i32, f64> = std::collections::BTreeMap::new();
    for (idx, a) in modes.indices().iter().zip(&state.amplitudes) {
        *bins.entry(idx.1).or_insert(0.0) += a.norm_sqr();
    }
    bins.into_iter()
        .map(|(j, p)| (modes.spacing * j as f64, p))
        .collect()
}
