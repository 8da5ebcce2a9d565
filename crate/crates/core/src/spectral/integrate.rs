//! Fixed-step classical Runge–Kutta integration.

use num_complex::Complex64;

use super::model::{SpectralModel, SpectralState};
use crate::error::{Error, Result};

/// Upper bound on dt·max|ω_k|.
pub const STABILITY_LIMIT: f64 = 0.5;

/// Outcome of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationReport {
    pub state: SpectralState,
    pub steps: usize,
    /// Largest conjugate-symmetry violation removed by re-symmetrization.
    pub max_reality_drift: f64,
}

fn axpy(base: &[Complex64], k: &[Complex64], h: f64) -> Vec<Complex64> {
    base.iter().zip(k).map(|(b, d)| b + d * h).collect()
}

fn rk4_step(model: &SpectralModel, phi: &[Complex64], dt: f64) -> Vec<Complex64> {
    let method = model.method();
    let k1 = model.rhs_unchecked(phi, method);
    let k2 = model.rhs_unchecked(&axpy(phi, &k1, 0.5 * dt), method);
    let k3 = model.rhs_unchecked(&axpy(phi, &k2, 0.5 * dt), method);
    let k4 = model.rhs_unchecked(&axpy(phi, &k3, dt), method);
    let sixth = dt / 6.0;
    phi.iter()
        .enumerate()
        .map(|(n, p)| p + (k1[n] + 2.0 * (k2[n] + k3[n]) + k4[n]) * sixth)
        .collect()
}

/// Advances `state` by `n_steps` steps of size `dt`, calling `observe`
/// after every step with the step count and the new state.
pub fn integrate_with<F>(
    model: &SpectralModel,
    state: &SpectralState,
    dt: f64,
    n_steps: usize,
    mut observe: F,
) -> Result<IntegrationReport>
where
    F: FnMut(usize, &SpectralState),
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
            reason: "must be finite and positive",
        });
    }
    let product = dt * model.max_frequency();
    if product >= STABILITY_LIMIT {
        return Err(Error::StepSize {
            product,
            limit: STABILITY_LIMIT,
        });
    }
    // Validates length and finiteness once up front.
    model.rhs(state)?;
    let mut current = state.clone();
    let mut max_drift = model.symmetrize(&mut current);
    let t0 = state.time;
    for step in 1..=n_steps {
        let next = rk4_step(model, &current.amplitudes, dt);
        if next.iter().any(|a| !a.is_finite()) {
            return Err(Error::Divergence { step });
        }
        current.amplitudes = next;
        current.time = t0 + step as f64 * dt;
        max_drift = max_drift.max(model.symmetrize(&mut current));
        observe(step, &current);
    }
    Ok(IntegrationReport {
        state: current,
        steps: n_steps,
        max_reality_drift: max_drift,
    })
}

pub fn integrate(
    model: &SpectralModel,
    state: &SpectralState,
    dt: f64,
    n_steps: usize,
) -> Result<IntegrationReport> {
    integrate_with(model, state, dt, n_steps, |_, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::ModelParams;
    use crate::spectral::grid::build_mode_grid;
    use crate::spectral::model::Convolution;

    fn model(xi: f64) -> SpectralModel {
        let g = build_mode_grid(8, 4.0).unwrap();
        SpectralModel::new(
            g.retained(),
            ModelParams::new(0.1, xi).unwrap(),
            Convolution::Direct,
        )
        .unwrap()
    }

    #[test]
    fn zero_stays_zero() {
        let m = model(0.7);
        let z = SpectralState::zeros(m.modes().len());
        let r = integrate(&m, &z, 1e-2, 100).unwrap();
        assert!(r.state.amplitudes.iter().all(|a| a.norm() == 0.0));
        assert!((r.state.time - 1.0).abs() < 1e-12);
    }

    #[test]
    fn linear_single_mode_rotates() {
        let m = model(0.7);
        let n = m.modes().position((1, 1)).unwrap();
        let mut s = SpectralState::zeros(m.modes().len());
        s.amplitudes[n] = Complex64::new(1e-8, 0.5e-8);
        s.amplitudes[m.modes().conj(n)] = s.amplitudes[n].conj();
        let r = integrate(&m, &s, 1e-3, 10_000).unwrap();
        let w = m.frequencies()[n];
        let want = s.amplitudes[n] * Complex64::new(0.0, -w * 10.0).exp();
        assert!((r.state.amplitudes[n] - want).norm() / want.norm() < 1e-8);
    }

    #[test]
    fn step_guard_and_divergence() {
        let m = model(0.0);
        let z = SpectralState::zeros(m.modes().len());
        let too_big = 0.6 / m.max_frequency();
        assert!(matches!(
            integrate(&m, &z, too_big, 1),
            Err(Error::StepSize { .. })
        ));
        assert!(integrate(&m, &z, -1.0, 1).is_err());

        let mut s = SpectralState::zeros(m.modes().len());
        for (n, a) in s.amplitudes.iter_mut().enumerate() {
            *a = Complex64::new(1e150 * (n % 3) as f64, 0.0);
        }
        match integrate(&m, &s, 1e-2, 50) {
            Err(Error::Divergence { step }) => assert!(step >= 1),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn observer_sees_every_step() {
        let m = model(0.0);
        let z = SpectralState::zeros(m.modes().len());
        let mut seen = Vec::new();
        integrate_with(&m, &z, 0.1, 5, |step, s| seen.push((step, s.time))).unwrap();
        assert_eq!(seen.len(), 5);
        assert_eq!(seen[4].0, 5);
    }
}
