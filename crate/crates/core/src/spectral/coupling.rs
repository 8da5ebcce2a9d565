//! Quadratic coupling coefficient of the spectral evolution equation.
//!
//! In wave units (r0 = 1, 2Ω = 1):
//!
//! Λ(k1, k2 → k) = (k2 × k1)_z · N(k1) · I(k2) / I(k)
//!
//! with N(k) = 1 + ξ²k²/2 and I(k) = 1 + k² + ξ²k⁴/2, and Λ = 0 unless
//! k1 + k2 = k.

use crate::dispersion::{ModelParams, WaveVector};

/// Λ without the closure check.
#[inline]
pub fn coupling_closed(k1: &WaveVector, k2: &WaveVector, k: &WaveVector, m: &ModelParams) -> f64 {
    let cross = k2.cross(k1);
    if cross == 0.0 {
        return 0.0;
    }
    cross * m.pressure_factor(k1.norm_sq()) * m.inertia(k2.norm_sq()) / m.inertia(k.norm_sq())
}

/// Λ, zero unless k1 + k2 = k (to rounding).
pub fn coupling(k1: &WaveVector, k2: &WaveVector, k: &WaveVector, m: &ModelParams) -> f64 {
    let sum = *k1 + *k2;
    let scale = k1.norm().max(k2.norm()).max(k.norm()).max(1.0);
    let miss = (sum.k_r - k.k_r).abs().max((sum.k_theta - k.k_theta).abs());
    if miss > 1e-12 * scale {
        return 0.0;
    }
    coupling_closed(k1, k2, k, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tf() -> ModelParams {
        ModelParams::new(0.1, 0.0).unwrap()
    }

    #[test]
    fn hand_value() {
        let k1 = WaveVector::new(1.0, 0.0);
        let k2 = WaveVector::new(0.0, 1.0);
        let k = WaveVector::new(1.0, 1.0);
        assert!((coupling(&k1, &k2, &k, &tf()) + 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn parallel_and_unclosed_vanish() {
        let m = ModelParams::new(0.1, 0.7).unwrap();
        let k1 = WaveVector::new(1.0, 2.0);
        let k2 = WaveVector::new(2.0, 4.0);
        assert_eq!(coupling(&k1, &k2, &(k1 + k2), &m), 0.0);
        let k3 = WaveVector::new(0.5, -1.0);
        assert_eq!(coupling(&k1, &k3, &WaveVector::new(9.0, 9.0), &m), 0.0);
        assert_ne!(coupling(&k1, &k3, &(k1 + k3), &m), 0.0);
    }

    proptest! {
        #[test]
        fn symmetrized_tf_identity(a in -6i32..=6, b in -6i32..=6, c in -6i32..=6, d in -6i32..=6, h in 0.1f64..1.5) {
            let k1 = WaveVector::new(h * a as f64, h * b as f64);
            let k2 = WaveVector::new(h * c as f64, h * d as f64);
            let k = k1 + k2;
            let m = tf();
            let lhs = coupling(&k1, &k2, &k, &m) + coupling(&k2, &k1, &k, &m);
            let rhs = k2.cross(&k1) * (k2.norm_sq() - k1.norm_sq()) / (1.0 + k.norm_sq());
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }

        #[test]
        fn self_interaction_vanishes(a in -6i32..=6, b in -6i32..=6, xi in 0.0f64..2.0) {
            let k1 = WaveVector::new(a as f64 * 0.4, b as f64 * 0.4);
            let m = ModelParams::new(0.1, xi).unwrap();
            prop_assert_eq!(coupling(&k1, &k1, &(k1 + k1), &m), 0.0);
        }
    }
}
