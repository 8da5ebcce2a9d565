//! Lattice triads k1 + k2 = k3 and the closed three-mode system.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::coupling::coupling_closed;
use super::grid::{LatticeIndex, ModeSet};
use super::integrate::integrate_with;
use super::model::{Convolution, SpectralModel, SpectralState};
use crate::dispersion::{omega, ModelParams, WaveVector};
use crate::error::{Error, Result};
use crate::par;

/// Three lattice modes with k1 + k2 = k3 exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triad {
    pub k1: WaveVector,
    pub k2: WaveVector,
    pub k3: WaveVector,
    /// |ω(k1) + ω(k2) − ω(k3)|
    pub mismatch: f64,
    pub lattice: [LatticeIndex; 3],
    pub spacing: f64,
}

impl Triad {
    /// Builds a triad from lattice indices of k1 and k2.
    pub fn from_lattice(
        spacing: f64,
        a: LatticeIndex,
        b: LatticeIndex,
        params: &ModelParams,
    ) -> Self {
        let c = (a.0 + b.0, a.1 + b.1);
        let v = |(i, j): LatticeIndex| WaveVector::new(spacing * i as f64, spacing * j as f64);
        let (k1, k2, k3) = (v(a), v(b), v(c));
        Self {
            k1,
            k2,
            k3,
            mismatch: (omega(&k1, params) + omega(&k2, params) - omega(&k3, params)).abs(),
            lattice: [a, b, c],
            spacing,
        }
    }

    /// k1 ∥ k2, so every coupling within the triad vanishes.
    pub fn is_collinear(&self) -> bool {
        let [a, b, _] = self.lattice;
        a.0 * b.1 - a.1 * b.0 == 0
    }
}

/// Search options for [`find_resonant_triads`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadSearch {
    /// Largest admitted frequency mismatch; `f64::INFINITY` admits all.
    pub tol: f64,
    /// Drop triads whose couplings vanish identically (k1 ∥ k2).
    pub require_coupling: bool,
}

impl TriadSearch {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            require_coupling: false,
        }
    }
}

/// All unordered pairs {k1, k2} of nonzero modes in `modes` whose sum is a
/// nonzero mode of `modes`, with mismatch ≤ tol. Sorted by mismatch, then
/// by lattice indices.
pub fn find_resonant_triads(
    modes: &ModeSet,
    params: &ModelParams,
    search: TriadSearch,
) -> Result<Vec<Triad>> {
    if !(search.tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be non-negative, got {}",
            search.tol
        )));
    }
    let indices = modes.indices();
    let per_first = par::map_range(indices.len(), |a| {
        let ia = indices[a];
        let mut found = Vec::new();
        if ia == (0, 0) {
            return found;
        }
        for &ib in &indices[a..] {
            let sum = (ia.0 + ib.0, ia.1 + ib.1);
            if ib == (0, 0) || sum == (0, 0) || modes.position(sum).is_none() {
                continue;
            }
            let t = Triad::from_lattice(modes.spacing, ia, ib, params);
            if t.mismatch <= search.tol && !(search.require_coupling && t.is_collinear()) {
                found.push(t);
            }
        }
        found
    });
    let mut all: Vec<Triad> = per_first.into_iter().flatten().collect();
    all.sort_by(|x, y| {
        x.mismatch
            .total_cmp(&y.mismatch)
            .then_with(|| x.lattice.cmp(&y.lattice))
    });
    Ok(all)
}

/// Coupling constants of the closed three-mode system
///
/// dφ1/dt = −iω1 φ1 + c1 φ3 conj(φ2)
/// dφ2/dt = −iω2 φ2 + c2 φ3 conj(φ1)
/// dφ3/dt = −iω3 φ3 + c3 φ1 φ2
///
/// each being the ordered-pair sum of Λ for that target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriadCouplings {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

pub fn triad_couplings(t: &Triad, params: &ModelParams) -> TriadCouplings {
    let (k1, k2, k3) = (t.k1, t.k2, t.k3);
    let pair = |a: WaveVector, b: WaveVector, k: WaveVector| {
        coupling_closed(&a, &b, &k, params) + coupling_closed(&b, &a, &k, params)
    };
    TriadCouplings {
        c1: pair(k3, -k2, k1),
        c2: pair(k3, -k1, k2),
        c3: pair(k1, k2, k3),
    }
}

/// Sampled trajectory of a three-mode run.
#[derive(Debug, Clone, PartialEq)]
pub struct TriadTrajectory {
    pub times: Vec<f64>,
    /// (φ1, φ2, φ3) at each sample.
    pub amplitudes: Vec<[Complex64; 3]>,
    /// Σ (1 + k²)|φ|² over the three modes at each sample.
    pub energy: Vec<f64>,
}

/// Integrates the spectral equation restricted to ±k1, ±k2, ±k3.
///
/// Samples are taken at t = 0 and every `sample_every` steps.
pub fn integrate_triad(
    triad: &Triad,
    initial: [Complex64; 3],
    params: &ModelParams,
    dt: f64,
    t_final: f64,
    sample_every: usize,
) -> Result<TriadTrajectory> {
    if sample_every == 0 {
        return Err(Error::InvalidArgument("sample_every must be >= 1".into()));
    }
    if !(t_final >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t_final must be >= 0, got {t_final}"
        )));
    }
    let [a, b, c] = triad.lattice;
    if (a.0 + b.0, a.1 + b.1) != c {
        return Err(Error::InvalidArgument("triad is not lattice-closed".into()));
    }
    if [a, b, c].contains(&(0, 0)) {
        return Err(Error::InvalidArgument(
            "triad contains the zero mode".into(),
        ));
    }
    let neg = |(i, j): LatticeIndex| (-i, -j);
    let modes = ModeSet::new(triad.spacing, vec![a, b, c, neg(a), neg(b), neg(c)])?;
    if modes.len() != 6 {
        return Err(Error::InvalidArgument(
            "degenerate triad: ±k1, ±k2, ±k3 are not six distinct modes".into(),
        ));
    }
    let pos = [a, b, c].map(|idx| modes.position(idx).expect("triad mode present"));
    let model = SpectralModel::new(modes, *params, Convolution::Direct)?;
    let mut state = SpectralState::zeros(model.modes().len());
    for (p, amp) in pos.iter().zip(initial) {
        state.amplitudes[*p] = amp;
        state.amplitudes[model.modes().conj(*p)] = amp.conj();
    }
    let weights = [triad.k1, triad.k2, triad.k3].map(|k| 1.0 + k.norm_sq());
    let sample = |s: &SpectralState| {
        let amps = pos.map(|p| s.amplitudes[p]);
        let e = amps
            .iter()
            .zip(weights)
            .map(|(a, w)| w * a.norm_sqr())
            .sum::<f64>();
        (amps, e)
    };
    let n_steps = (t_final / dt).round() as usize;
    let mut out = TriadTrajectory {
        times: vec![0.0],
        amplitudes: Vec::new(),
        energy: Vec::new(),
    };
    let (amps, e) = sample(&state);
    out.amplitudes.push(amps);
    out.energy.push(e);
    integrate_with(&model, &state, dt, n_steps, |step, s| {
        if step % sample_every == 0 {
            let (amps, e) = sample(s);
            out.times.push(s.time);
            out.amplitudes.push(amps);
            out.energy.push(e);
        }
    })?;
    Ok(out)
}

/// One member of a triad pumping the other two.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayChannel {
    /// Index (0, 1, 2) of the pump among k1, k2, k3.
    pub pump: usize,
    /// Linear growth rate of the daughters for an undepleted pump.
    pub growth_rate: f64,
}

/// Fastest-growing decay channel for a pump of modulus `pump_amplitude`,
/// if any. In the variables (φ1, φ2, conj φ3) each daughter pair grows at
/// λ = sqrt(c_l c_m P² − Δ²/4), Δ the signed frequency mismatch.
pub fn decay_channel(t: &Triad, params: &ModelParams, pump_amplitude: f64) -> Option<DecayChannel> {
    let c = triad_couplings(t, params);
    let d = [c.c1, c.c2, c.c3];
    let delta = omega(&t.k1, params) + omega(&t.k2, params) - omega(&t.k3, params);
    let p2 = pump_amplitude * pump_amplitude;
    (0..3)
        .filter_map(|p| {
            let lam_sq = d[(p + 1) % 3] * d[(p + 2) % 3] * p2 - 0.25 * delta * delta;
            (lam_sq > 0.0).then(|| DecayChannel {
                pump: p,
                growth_rate: lam_sq.sqrt(),
            })
        })
        .max_by(|a, b| a.growth_rate.total_cmp(&b.growth_rate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::build_mode_grid;

    fn tf() -> ModelParams {
        ModelParams::new(0.1, 0.0).unwrap()
    }

    #[test]
    fn infinite_tolerance_counts_all_pairs() {
        let modes = build_mode_grid(8, 4.0).unwrap().retained();
        let all = find_resonant_triads(&modes, &tf(), TriadSearch::new(f64::INFINITY)).unwrap();
        // Count ordered pairs directly, then fold to unordered.
        let idx = modes.indices();
        let (mut ordered, mut diagonal) = (0usize, 0usize);
        for &x in idx {
            for &y in idx {
                let s = (x.0 + y.0, x.1 + y.1);
                if x != (0, 0) && y != (0, 0) && s != (0, 0) && idx.contains(&s) {
                    ordered += 1;
                    if x == y {
                        diagonal += 1;
                    }
                }
            }
        }
        assert_eq!(all.len(), (ordered + diagonal) / 2);
        for w in all.windows(2) {
            assert!(w[0].mismatch <= w[1].mismatch);
        }
    }

    #[test]
    fn coupling_filter_drops_collinear() {
        let modes = build_mode_grid(8, 4.0).unwrap().retained();
        let all = find_resonant_triads(&modes, &tf(), TriadSearch::new(f64::INFINITY)).unwrap();
        let filtered = find_resonant_triads(
            &modes,
            &tf(),
            TriadSearch {
                tol: f64::INFINITY,
                require_coupling: true,
            },
        )
        .unwrap();
        assert!(filtered.len() < all.len());
        assert!(filtered.iter().all(|t| !t.is_collinear()));
        assert_eq!(
            all.iter().filter(|t| !t.is_collinear()).count(),
            filtered.len()
        );
    }

    #[test]
    fn mismatch_matches_direct_evaluation() {
        let m = ModelParams::new(0.1, 0.7).unwrap();
        let t = Triad::from_lattice(0.5, (2, 3), (2, -3), &m);
        let direct = (omega(&WaveVector::new(1.0, 1.5), &m)
            + omega(&WaveVector::new(1.0, -1.5), &m)
            - omega(&WaveVector::new(2.0, 0.0), &m))
        .abs();
        assert!((t.mismatch - direct).abs() < 1e-14);
        // ω is odd in k_θ and k3 is purely radial, so the mismatch is zero.
        assert!(t.mismatch < 1e-17);
    }

    #[test]
    fn ordering_is_deterministic() {
        let modes = build_mode_grid(12, 3.0).unwrap().retained();
        let a = find_resonant_triads(&modes, &tf(), TriadSearch::new(1e-3)).unwrap();
        let b = find_resonant_triads(&modes, &tf(), TriadSearch::new(1e-3)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|t| t.mismatch <= 1e-3));
        assert!(find_resonant_triads(&modes, &tf(), TriadSearch::new(-1.0)).is_err());
    }

    #[test]
    fn seeding_rate_at_start() {
        let m = tf();
        // |k1| ≠ |k2|: at ξ = 0 the coupling vanishes between equal-magnitude modes.
        let t = Triad::from_lattice(0.5, (2, 1), (-1, 3), &m);
        let c = triad_couplings(&t, &m);
        let (f1, f2) = (Complex64::new(0.05, 0.0), Complex64::new(0.0, 0.04));
        let dt = 1e-3;
        let traj =
            integrate_triad(&t, [f1, f2, Complex64::new(0.0, 0.0)], &m, dt, 10.0 * dt, 1).unwrap();
        let rate = traj.amplitudes[1][2].norm() / dt;
        let want = (c.c3 * f1 * f2).norm();
        assert!((rate - want).abs() / want < 1e-2, "{rate} vs {want}");
    }

    #[test]
    fn collinear_modes_only_rotate() {
        let m = ModelParams::new(0.1, 0.7).unwrap();
        let t = Triad::from_lattice(0.5, (1, 2), (2, 4), &m);
        assert!(t.is_collinear());
        let init = [
            Complex64::new(0.3, 0.0),
            Complex64::new(0.0, 0.2),
            Complex64::new(0.1, 0.1),
        ];
        let traj = integrate_triad(&t, init, &m, 1e-2, 20.0, 100).unwrap();
        for amps in &traj.amplitudes {
            for (a, b) in amps.iter().zip(&init) {
                assert!((a.norm() - b.norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn decay_channel_matches_early_growth() {
        let m = ModelParams::new(0.1, 0.7).unwrap();
        let t = Triad::from_lattice(0.5, (2, 1), (-1, 3), &m);
        let ch = decay_channel(&t, &m, 0.05).unwrap();
        assert!(decay_channel(&Triad::from_lattice(0.5, (1, 2), (2, 4), &m), &m, 0.05).is_none());
        let mut init = [Complex64::new(0.0, 0.0); 3];
        init[ch.pump] = Complex64::new(0.05, 0.0);
        init[(ch.pump + 1) % 3] = Complex64::new(1e-6, 0.0);
        init[(ch.pump + 2) % 3] = Complex64::new(1e-6, 0.0);
        let tr = integrate_triad(&t, init, &m, 1e-2, 8.0 / ch.growth_rate, 20).unwrap();
        // Late-time growth of the daughters, once the fastest mode dominates.
        let n = tr.times.len();
        let d = (ch.pump + 1) % 3;
        let (a, b) = (
            tr.amplitudes[n - 11][d].norm(),
            tr.amplitudes[n - 1][d].norm(),
        );
        let rate = (b / a).ln() / (tr.times[n - 1] - tr.times[n - 11]);
        assert!(
            (rate - ch.growth_rate).abs() / ch.growth_rate < 1e-2,
            "{rate} vs {}",
            ch.growth_rate
        );
    }

    #[test]
    fn rejects_open_triads() {
        let m = tf();
        let mut t = Triad::from_lattice(0.5, (1, 0), (0, 1), &m);
        t.lattice[2] = (2, 2);
        assert!(integrate_triad(&t, [Complex64::new(0.0, 0.0); 3], &m, 1e-2, 1.0, 1).is_err());
    }
}
