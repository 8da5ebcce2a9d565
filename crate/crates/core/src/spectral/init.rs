//! Initial conditions.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::{LatticeIndex, ModeSet};
use super::model::SpectralState;
use crate::error::{Error, Result};

/// φ_k = amplitude at `index`, its conjugate at −index, zero elsewhere.
pub fn single_mode(
    modes: &ModeSet,
    index: LatticeIndex,
    amplitude: Complex64,
) -> Result<SpectralState> {
    let n = modes
        .position(index)
        .ok_or_else(|| Error::InvalidArgument(format!("mode {index:?} is not retained")))?;
    let mut s = SpectralState::zeros(modes.len());
    s.amplitudes[n] = amplitude;
    let c = modes.conj(n);
    if c == n {
        s.amplitudes[n] = Complex64::new(amplitude.re, 0.0);
    } else {
        s.amplitudes[c] = amplitude.conj();
    }
    Ok(s)
}

/// Random-phase spectrum |φ_k| ∝ k·exp(−k²/(2k_p²)), scaled so that the
/// largest amplitude equals `amplitude`. Phases are uniform and drawn in
/// mode order from a ChaCha8 stream seeded with `seed`.
pub fn random_spectrum(
    modes: &ModeSet,
    seed: u64,
    amplitude: f64,
    k_peak: f64,
) -> Result<SpectralState> {
    if !(k_peak > 0.0) {
        return Err(Error::InvalidParameter {
            name: "k_peak",
            value: k_peak,
            reason: "must be positive",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SpectralState::zeros(modes.len());
    let mut largest = 0.0f64;
    for n in 0..modes.len() {
        let c = modes.conj(n);
        // One draw per ±k pair; k = 0 stays empty.
        if c <= n {
            continue;
        }
        let k = modes.vector(n).norm();
        let magnitude = k * (-k * k / (2.0 * k_peak * k_peak)).exp();
        let phase = rng.random_range(0.0..TAU);
        let a = Complex64::from_polar(magnitude, phase);
        s.amplitudes[n] = a;
        s.amplitudes[c] = a.conj();
        largest = largest.max(magnitude);
    }
    if largest > 0.0 {
        let scale = amplitude / largest;
        for a in s.amplitudes.iter_mut() {
            *a *= scale;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::build_mode_grid;

    #[test]
    fn random_spectrum_is_real_and_seeded() {
        let modes = build_mode_grid(16, 4.0).unwrap().retained();
        let a = random_spectrum(&modes, 42, 0.1, 1.0).unwrap();
        let b = random_spectrum(&modes, 42, 0.1, 1.0).unwrap();
        let c = random_spectrum(&modes, 43, 0.1, 1.0).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for n in 0..modes.len() {
            assert_eq!(a.amplitudes[n], a.amplitudes[modes.conj(n)].conj());
        }
        assert!((a.max_amplitude() - 0.1).abs() < 1e-15);
        assert_eq!(a.amplitudes[modes.position((0, 0)).unwrap()].norm(), 0.0);
    }

    #[test]
    fn single_mode_rejects_masked_index() {
        let modes = build_mode_grid(8, 4.0).unwrap().retained();
        assert!(single_mode(&modes, (4, 0), Complex64::new(1.0, 0.0)).is_err());
        let s = single_mode(&modes, (1, 2), Complex64::new(1.0, 2.0)).unwrap();
        let n = modes.position((-1, -2)).unwrap();
        assert_eq!(s.amplitudes[n], Complex64::new(1.0, -2.0));
    }
}
