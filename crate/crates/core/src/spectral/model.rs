//! Right-hand side of the truncated spectral evolution equation
//!
//! dφ_k/dt = −i ω_k φ_k + Σ_{k1 + k2 = k} Λ(k1, k2 → k) φ_{k1} φ_{k2},
//!
//! summed over ordered pairs of retained modes whose sum is also retained.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::coupling::coupling_closed;
use super::grid::ModeSet;
use crate::dispersion::{omega, ModelParams};
use crate::error::{Error, Result};
use crate::par;

/// How the quadratic convolution is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Convolution {
    /// Precomputed pair table, summed per output mode.
    Direct,
    /// Separable factorization of Λ evaluated with 2-D FFTs.
    Transform,
    /// Direct below [`AUTO_TRANSFORM_THRESHOLD`] modes, transform above.
    #[default]
    Auto,
}

/// Mode count above which [`Convolution::Auto`] switches to transforms.
pub const AUTO_TRANSFORM_THRESHOLD: usize = 400;

/// Complex amplitudes φ_k, one per mode of the owning [`SpectralModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    pub amplitudes: Vec<Complex64>,
    /// Time in r0/c_s.
    pub time: f64,
}

impl SpectralState {
    pub fn zeros(len: usize) -> Self {
        Self {
            amplitudes: vec![Complex64::new(0.0, 0.0); len],
            time: 0.0,
        }
    }

    pub fn max_amplitude(&self) -> f64 {
        self.amplitudes.iter().fold(0.0, |m, a| m.max(a.norm()))
    }
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    a: u32,
    b: u32,
    lambda: f64,
}

/// Mode set, parameters and cached operators.
pub struct SpectralModel {
    modes: ModeSet,
    params: ModelParams,
    omega: Vec<f64>,
    pairs: Vec<Vec<Pair>>,
    transform: TransformConvolver,
    method: Convolution,
}

impl std::fmt::Debug for SpectralModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralModel")
            .field("modes", &self.modes.len())
            .field("params", &self.params)
            .field("method", &self.method)
            .finish()
    }
}

impl SpectralModel {
    pub fn new(modes: ModeSet, params: ModelParams, method: Convolution) -> Result<Self> {
        params.validate()?;
        let omega: Vec<f64> = modes.vectors().iter().map(|k| omega(k, &params)).collect();
        let pairs = build_pairs(&modes, &params);
        let transform = TransformConvolver::new(&modes, &params);
        let method = match method {
            Convolution::Auto if modes.len() > AUTO_TRANSFORM_THRESHOLD => Convolution::Transform,
            Convolution::Auto => Convolution::Direct,
            m => m,
        };
        Ok(Self {
            modes,
            params,
            omega,
            pairs,
            transform,
            method,
        })
    }

    pub fn modes(&self) -> &ModeSet {
        &self.modes
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn method(&self) -> Convolution {
        self.method
    }

    /// Linear frequencies ω_k, in mode order.
    pub fn frequencies(&self) -> &[f64] {
        &self.omega
    }

    pub fn max_frequency(&self) -> f64 {
        self.omega.iter().fold(0.0, |m, w| m.max(w.abs()))
    }

    /// Number of ordered pairs with nonzero coupling.
    pub fn active_pairs(&self) -> usize {
        self.pairs.iter().map(Vec::len).sum()
    }

    fn check_len(&self, state: &SpectralState) -> Result<()> {
        if state.amplitudes.len() != self.modes.len() {
            return Err(Error::Shape(format!(
                "state has {} amplitudes, model has {} modes",
                state.amplitudes.len(),
                self.modes.len()
            )));
        }
        Ok(())
    }

    fn check_finite(amplitudes: &[Complex64]) -> Result<()> {
        match amplitudes.iter().position(|a| !a.is_finite()) {
            Some(mode) => Err(Error::CorruptedState { mode }),
            None => Ok(()),
        }
    }

    /// dφ/dt using the configured convolution.
    pub fn rhs(&self, state: &SpectralState) -> Result<Vec<Complex64>> {
        self.rhs_with(state, self.method)
    }

    /// dφ/dt with an explicit convolution method.
    pub fn rhs_with(&self, state: &SpectralState, method: Convolution) -> Result<Vec<Complex64>> {
        self.check_len(state)?;
        Self::check_finite(&state.amplitudes)?;
        Ok(self.rhs_unchecked(&state.amplitudes, method))
    }

    pub(crate) fn rhs_unchecked(&self, phi: &[Complex64], method: Convolution) -> Vec<Complex64> {
        let mut out = match method {
            Convolution::Transform => self.transform.nonlinear(phi),
            _ => self.nonlinear_direct(phi),
        };
        for ((o, p), w) in out.iter_mut().zip(phi).zip(&self.omega) {
            *o += Complex64::new(0.0, -w) * p;
        }
        out
    }

    /// Pair-table convolution. Each output mode accumulates its pairs in a
    /// fixed order, so the result does not depend on the worker count.
    fn nonlinear_direct(&self, phi: &[Complex64]) -> Vec<Complex64> {
        par::map_range(self.modes.len(), |t| {
            self.pairs[t]
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, p| {
                    acc + phi[p.a as usize] * phi[p.b as usize] * p.lambda
                })
        })
    }

    /// Sequential pair-table convolution, for benchmarking the parallel path.
    pub fn nonlinear_direct_sequential(&self, phi: &[Complex64]) -> Vec<Complex64> {
        (0..self.modes.len())
            .map(|t| {
                self.pairs[t]
                    .iter()
                    .fold(Complex64::new(0.0, 0.0), |acc, p| {
                        acc + phi[p.a as usize] * phi[p.b as usize] * p.lambda
                    })
            })
            .collect()
    }

    /// Restores φ_{−k} = conj(φ_k) by averaging; returns the largest
    /// violation found before averaging.
    pub fn symmetrize(&self, state: &mut SpectralState) -> f64 {
        let mut drift = 0.0f64;
        for n in 0..self.modes.len() {
            let c = self.modes.conj(n);
            if c < n {
                continue;
            }
            let a = state.amplitudes[n];
            let b = state.amplitudes[c].conj();
            drift = drift.max((a - b).norm());
            let avg = 0.5 * (a + b);
            state.amplitudes[n] = avg;
            state.amplitudes[c] = avg.conj();
        }
        drift
    }

    /// Largest |φ_k − conj(φ_{−k})|.
    pub fn reality_violation(&self, state: &SpectralState) -> f64 {
        (0..self.modes.len())
            .map(|n| (state.amplitudes[n] - state.amplitudes[self.modes.conj(n)].conj()).norm())
            .fold(0.0, f64::max)
    }
}

fn build_pairs(modes: &ModeSet, params: &ModelParams) -> Vec<Vec<Pair>> {
    let indices = modes.indices();
    par::map_range(modes.len(), |t| {
        let (ti, tj) = indices[t];
        let k = modes.vector(t);
        let mut pairs = Vec::new();
        for (a, &(ai, aj)) in indices.iter().enumerate() {
            let Some(b) = modes.position((ti - ai, tj - aj)) else {
                continue;
            };
            let lambda = coupling_closed(&modes.vector(a), &modes.vector(b), &k, params);
            if lambda != 0.0 {
                pairs.push(Pair {
                    a: a as u32,
                    b: b as u32,
                    lambda,
                });
            }
        }
        pairs
    })
}

/// Evaluates Σ Λ φ1 φ2 through the factorization
///
/// Λ(k1, k2 → k) = [k2_r k1_θ − k2_θ k1_r] N(k1) I(k2) / I(k),
///
/// so the sum is (1/I(k))·F[X₂Y₁ − Y₂X₁] with X₁ = F⁻¹[k_r N φ],
/// Y₁ = F⁻¹[k_θ N φ], X₂ = F⁻¹[k_r I φ], Y₂ = F⁻¹[k_θ I φ]. The transform
/// size exceeds three times the largest retained index, so products of
/// retained modes never alias onto retained modes.
struct TransformConvolver {
    size: usize,
    slots: Vec<usize>,
    weights: Vec<[f64; 4]>,
    inv_inertia: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl TransformConvolver {
    fn new(modes: &ModeSet, params: &ModelParams) -> Self {
        let m = modes.max_index() as usize;
        let mut size = (3 * m + 1).max(8);
        size += size % 2;
        let wrap = |i: i32| i.rem_euclid(size as i32) as usize;
        let slots = modes
            .indices()
            .iter()
            .map(|&(i, j)| wrap(i) * size + wrap(j))
            .collect();
        let weights = modes
            .vectors()
            .iter()
            .map(|k| {
                let q = k.norm_sq();
                let n = params.pressure_factor(q);
                let inertia = params.inertia(q);
                [
                    k.k_r * n,
                    k.k_theta * n,
                    k.k_r * inertia,
                    k.k_theta * inertia,
                ]
            })
            .collect();
        let inv_inertia = modes
            .vectors()
            .iter()
            .map(|k| 1.0 / params.inertia(k.norm_sq()))
            .collect();
        let mut planner = FftPlanner::new();
        Self {
            size,
            slots,
            weights,
            inv_inertia,
            forward: planner.plan_fft_forward(size),
            inverse: planner.plan_fft_inverse(size),
        }
    }

    fn fft2(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let n = self.size;
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        plan.process_with_scratch(data, &mut scratch);
        let mut column = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            for i in 0..n {
                column[i] = data[i * n + j];
            }
            plan.process_with_scratch(&mut column, &mut scratch);
            for i in 0..n {
                data[i * n + j] = column[i];
            }
        }
    }

    fn nonlinear(&self, phi: &[Complex64]) -> Vec<Complex64> {
        let cells = self.size * self.size;
        let fields: Vec<Vec<Complex64>> = par::map_range(4, |w| {
            let mut buf = vec![Complex64::new(0.0, 0.0); cells];
            for ((slot, weight), p) in self.slots.iter().zip(&self.weights).zip(phi) {
                buf[*slot] = p * weight[w];
            }
            self.fft2(&mut buf, &self.inverse);
            buf
        });
        let (x1, y1, x2, y2) = (&fields[0], &fields[1], &fields[2], &fields[3]);
        let mut product: Vec<Complex64> =
            (0..cells).map(|c| x2[c] * y1[c] - y2[c] * x1[c]).collect();
        self.fft2(&mut product, &self.forward);
        let norm = 1.0 / cells as f64;
        self.slots
            .iter()
            .zip(&self.inv_inertia)
            .map(|(slot, inv)| product[*slot] * (norm * inv))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::coupling::coupling;
    use crate::spectral::grid::build_mode_grid;
    use rand::{Rng, SeedableRng};

    fn random_state(model: &SpectralModel, seed: u64) -> SpectralState {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut s = SpectralState::zeros(model.modes().len());
        for a in s.amplitudes.iter_mut() {
            *a = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        model.symmetrize(&mut s);
        s
    }

    /// Ordered-pair sum over all modes, straight from the definition.
    fn brute_force(model: &SpectralModel, phi: &[Complex64]) -> Vec<Complex64> {
        let modes = model.modes();
        let m = model.params();
        (0..modes.len())
            .map(|t| {
                let k = modes.vector(t);
                let mut acc = Complex64::new(0.0, -model.frequencies()[t]) * phi[t];
                for a in 0..modes.len() {
                    for b in 0..modes.len() {
                        let lambda = coupling(&modes.vector(a), &modes.vector(b), &k, m);
                        acc += phi[a] * phi[b] * lambda;
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn zero_state_zero_rhs() {
        let g = build_mode_grid(8, 4.0).unwrap();
        let model = SpectralModel::new(
            g.retained(),
            ModelParams::new(0.1, 0.7).unwrap(),
            Convolution::Direct,
        )
        .unwrap();
        let z = SpectralState::zeros(model.modes().len());
        for method in [Convolution::Direct, Convolution::Transform] {
            assert!(model
                .rhs_with(&z, method)
                .unwrap()
                .iter()
                .all(|v| v.norm() == 0.0));
        }
    }

    #[test]
    fn single_mode_is_linear() {
        let g = build_mode_grid(8, 4.0).unwrap();
        let model = SpectralModel::new(
            g.retained(),
            ModelParams::new(0.1, 0.7).unwrap(),
            Convolution::Direct,
        )
        .unwrap();
        let n = model.modes().position((1, 2)).unwrap();
        let mut s = SpectralState::zeros(model.modes().len());
        s.amplitudes[n] = Complex64::new(0.3, -0.2);
        s.amplitudes[model.modes().conj(n)] = s.amplitudes[n].conj();
        let d = model.rhs(&s).unwrap();
        for (i, v) in d.iter().enumerate() {
            let want = Complex64::new(0.0, -model.frequencies()[i]) * s.amplitudes[i];
            assert_eq!(*v, want);
        }
    }

    #[test]
    fn two_modes_feed_their_sum() {
        let g = build_mode_grid(8, 4.0).unwrap();
        let params = ModelParams::new(0.1, 0.7).unwrap();
        let model = SpectralModel::new(g.retained(), params, Convolution::Direct).unwrap();
        let modes = model.modes();
        let p1 = modes.position((1, 0)).unwrap();
        let p2 = modes.position((0, 1)).unwrap();
        let p3 = modes.position((1, 1)).unwrap();
        let mut s = SpectralState::zeros(modes.len());
        let (f1, f2) = (Complex64::new(0.4, 0.1), Complex64::new(-0.2, 0.3));
        s.amplitudes[p1] = f1;
        s.amplitudes[modes.conj(p1)] = f1.conj();
        s.amplitudes[p2] = f2;
        s.amplitudes[modes.conj(p2)] = f2.conj();
        let d = model.rhs(&s).unwrap();
        let (k1, k2, k3) = (modes.vector(p1), modes.vector(p2), modes.vector(p3));
        let want = f1 * f2 * (coupling(&k1, &k2, &k3, &params) + coupling(&k2, &k1, &k3, &params));
        assert!((d[p3] - want).norm() < 1e-15);
    }

    #[test]
    fn direct_and_transform_match_brute_force() {
        for (n, k_max, xi) in [(8, 4.0, 0.0), (8, 2.5, 0.7), (10, 3.0, 1.3), (12, 2.0, 0.4)] {
            let g = build_mode_grid(n, k_max).unwrap();
            let params = ModelParams::new(0.1, xi).unwrap();
            let model = SpectralModel::new(g.retained(), params, Convolution::Direct).unwrap();
            for seed in 0..3 {
                let s = random_state(&model, seed);
                let oracle = brute_force(&model, &s.amplitudes);
                for method in [Convolution::Direct, Convolution::Transform] {
                    let got = model.rhs_with(&s, method).unwrap();
                    for (g, o) in got.iter().zip(&oracle) {
                        assert!((g - o).norm() < 1e-12, "{method:?} n={n}: {g} vs {o}");
                    }
                }
            }
        }
    }

    #[test]
    fn rhs_preserves_reality() {
        let g = build_mode_grid(16, 4.0).unwrap();
        let model = SpectralModel::new(
            g.retained(),
            ModelParams::new(0.1, 1.3).unwrap(),
            Convolution::Direct,
        )
        .unwrap();
        let s = random_state(&model, 9);
        let d = SpectralState {
            amplitudes: model.rhs(&s).unwrap(),
            time: 0.0,
        };
        assert!(model.reality_violation(&d) < 1e-12);
    }

    #[test]
    fn sequential_matches_parallel_bitwise() {
        let g = build_mode_grid(16, 4.0).unwrap();
        let model = SpectralModel::new(
            g.retained(),
            ModelParams::new(0.1, 0.7).unwrap(),
            Convolution::Direct,
        )
        .unwrap();
        let s = random_state(&model, 3);
        assert_eq!(
            model.nonlinear_direct(&s.amplitudes),
            model.nonlinear_direct_sequential(&s.amplitudes)
        );
    }

    #[test]
    fn corrupted_state_rejected() {
        let g = build_mode_grid(8, 4.0).unwrap();
        let model = SpectralModel::new(
            g.retained(),
            ModelParams::new(0.1, 0.0).unwrap(),
            Convolution::Direct,
        )
        .unwrap();
        let mut s = SpectralState::zeros(model.modes().len());
        s.amplitudes[3] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(model.rhs(&s), Err(Error::CorruptedState { mode: 3 }));
        assert!(matches!(
            model.rhs(&SpectralState::zeros(2)),
            Err(Error::Shape(_))
        ));
    }
}
