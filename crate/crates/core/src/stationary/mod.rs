//! Axisymmetric stationary structures φ(r) = A·J0(κr) + B·Y0(κr).
//!
//! With ∇²φ = −κφ the stationary bracket equation is satisfied identically;
//! κ, A and B are fixed by requiring φ to vanish where the Thomas–Fermi
//! density vanishes. Lengths are in a_ho.
//!
//! - Disk (μ > 0): B = 0 for regularity at the origin and κR_+ = j_{0,n}.
//! - Annulus (μ < 0): κ is the n-th root of
//!   D(κ) = J0(κR_−)Y0(κR_+) − J0(κR_+)Y0(κR_−)
//!   and (A, B) ∝ (Y0(κR_−), −J0(κR_−)).
//!
//! Amplitudes are normalized to max|φ| = 1 with the extremum positive.

pub mod bessel;
mod residual;

use serde::{Deserialize, Serialize};

use crate::equilibrium::{tf_profile, TfEquilibrium};
use crate::error::{Error, Result};

pub use bessel::{bessel_j0_y0, j0, j0_zero, y0};
pub use residual::{poisson_bracket, polar_laplacian, stationarity_residual, PolarField};

/// Step of the κ scan used to bracket annulus roots.
pub const KAPPA_SCAN_STEP: f64 = 0.01;
/// Bracket width at which bisection stops.
pub const KAPPA_TOL: f64 = 1e-12;

/// A solved radial mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryStructure {
    /// Radial wavenumber (1/a_ho).
    pub kappa: f64,
    pub a_coef: f64,
    pub b_coef: f64,
    /// Zero for a disk.
    pub r_inner: f64,
    pub r_outer: f64,
    /// 1 is the fundamental; n has n − 1 interior nodes.
    pub mode_index: usize,
    /// Final bisection bracket around `kappa`.
    pub kappa_bracket: (f64, f64),
}

impl StationaryStructure {
    pub fn is_disk(&self) -> bool {
        self.r_inner == 0.0
    }

    /// φ at a single radius, without domain checks.
    fn value(&self, r: f64) -> f64 {
        let x = self.kappa * r;
        if self.b_coef == 0.0 {
            self.a_coef * j0(x)
        } else {
            self.a_coef * j0(x) + self.b_coef * libm::y0(x)
        }
    }

    /// Interior sign changes of φ counted on a uniform sample.
    pub fn interior_sign_changes(&self, samples: usize) -> usize {
        let width = self.r_outer - self.r_inner;
        let mut last = 0.0f64;
        let mut changes = 0;
        for i in 1..samples {
            let r = self.r_inner + width * i as f64 / samples as f64;
            let v = self.value(r);
            if v != 0.0 {
                if last != 0.0 && (v < 0.0) != (last < 0.0) {
                    changes += 1;
                }
                last = v;
            }
        }
        changes
    }
}

/// Annulus determinant D(κ).
pub fn annulus_determinant(kappa: f64, r_inner: f64, r_outer: f64) -> Result<f64> {
    let (ji, yi) = bessel_j0_y0(kappa * r_inner)?;
    let (jo, yo) = bessel_j0_y0(kappa * r_outer)?;
    Ok(ji * yo - jo * yi)
}

/// Disk mode regular at the origin, vanishing at R_+.
pub fn solve_disk_mode(eq: &TfEquilibrium, mode_index: usize) -> Result<StationaryStructure> {
    if !(eq.mu > 0.0) {
        return Err(Error::WrongTopology(format!(
            "disk mode requires mu > 0, got mu = {}",
            eq.mu
        )));
    }
    let r_outer = eq.r_plus();
    let (zero, (lo, hi)) = j0_zero(mode_index)?;
    let mut s = StationaryStructure {
        kappa: zero / r_outer,
        a_coef: 1.0,
        b_coef: 0.0,
        r_inner: 0.0,
        r_outer,
        mode_index,
        kappa_bracket: (lo / r_outer, hi / r_outer),
    };
    normalize(&mut s);
    Ok(s)
}

/// Annulus mode vanishing at R_− and R_+.
pub fn solve_annulus_mode(eq: &TfEquilibrium, mode_index: usize) -> Result<StationaryStructure> {
    if !(eq.mu < 0.0) {
        return Err(Error::WrongTopology(format!(
            "annulus mode requires mu < 0, got mu = {}",
            eq.mu
        )));
    }
    if mode_index == 0 {
        return Err(Error::InvalidArgument("mode index must be >= 1".into()));
    }
    let r_inner = eq
        .r_minus()
        .filter(|r| *r > 0.0)
        .ok_or_else(|| Error::WrongTopology("inner radius is not real".into()))?;
    let r_outer = eq.r_plus();
    let (lo, hi) = bracket_annulus_root(r_inner, r_outer, mode_index)?;
    let kappa = 0.5 * (lo + hi);
    let (j_in, y_in) = bessel_j0_y0(kappa * r_inner)?;
    let mut s = StationaryStructure {
        kappa,
        a_coef: y_in,
        b_coef: -j_in,
        r_inner,
        r_outer,
        mode_index,
        kappa_bracket: (lo, hi),
    };
    normalize(&mut s);
    Ok(s)
}

/// Chooses the disk or annulus solver from the sign of μ.
pub fn solve_mode(eq: &TfEquilibrium, mode_index: usize) -> Result<StationaryStructure> {
    if eq.mu > 0.0 {
        solve_disk_mode(eq, mode_index)
    } else if eq.mu < 0.0 {
        solve_annulus_mode(eq, mode_index)
    } else {
        Err(Error::WrongTopology(
            "mu = 0 is the transition point; neither disk nor annulus".into(),
        ))
    }
}

/// Scans κ ∈ (0, 20/(R_+ − R_−)] and bisects the n-th sign change of D.
fn bracket_annulus_root(r_inner: f64, r_outer: f64, n: usize) -> Result<(f64, f64)> {
    let kappa_max = 20.0 / (r_outer - r_inner);
    let samples = (kappa_max / KAPPA_SCAN_STEP).floor() as usize;
    let d = |k: f64| annulus_determinant(k, r_inner, r_outer).unwrap_or(f64::NAN);
    let mut found = 0;
    let mut prev_k = KAPPA_SCAN_STEP;
    let mut prev_d = d(prev_k);
    for i in 2..=samples {
        let k = i as f64 * KAPPA_SCAN_STEP;
        let dk = d(k);
        if prev_d == 0.0 || (dk != 0.0 && (dk < 0.0) != (prev_d < 0.0)) {
            found += 1;
            if found == n {
                if prev_d == 0.0 {
                    return Ok((prev_k, prev_k));
                }
                return Ok(bessel::bisect(d, prev_k, k, KAPPA_TOL));
            }
        }
        prev_k = k;
        prev_d = dk;
    }
    Err(Error::RootBracketing {
        wanted: n,
        found,
        samples,
        kappa_max,
    })
}

/// Rescales (A, B) so that max|φ| = 1 with a positive extremum.
fn normalize(s: &mut StationaryStructure) {
    let width = s.r_outer - s.r_inner;
    let samples = 4000;
    let mut best_r = s.r_inner;
    let mut best = 0.0f64;
    for i in 0..=samples {
        let r = s.r_inner + width * i as f64 / samples as f64;
        if r == 0.0 && s.b_coef != 0.0 {
            continue;
        }
        let v = s.value(r).abs();
        if v > best {
            best = v;
            best_r = r;
        }
    }
    // Golden-section refinement of the sampled maximum.
    let h = width / samples as f64;
    let mut a = (best_r - h).max(s.r_inner);
    let mut b = (best_r + h).min(s.r_outer);
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let f = |r: f64| s.value(r).abs();
    for _ in 0..80 {
        let c = b - inv_phi * (b - a);
        let d = a + inv_phi * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let r_peak = 0.5 * (a + b);
    let peak = if f(r_peak) > best { r_peak } else { best_r };
    let signed = s.value(peak);
    let scale = 1.0 / signed;
    s.a_coef *= scale;
    s.b_coef *= scale;
}

/// φ on a radial grid inside [r_inner, r_outer].
pub fn evaluate_structure(s: &StationaryStructure, radii: &[f64]) -> Result<Vec<f64>> {
    let slack = 1e-12 * s.r_outer.max(1.0);
    radii
        .iter()
        .map(|&r| {
            if !(r >= s.r_inner - slack && r <= s.r_outer + slack) {
                return Err(Error::Domain(format!(
                    "r = {r} outside [{}, {}]",
                    s.r_inner, s.r_outer
                )));
            }
            if r <= 0.0 && s.b_coef != 0.0 {
                return Err(Error::Domain("Y0 term is singular at r = 0".into()));
            }
            Ok(s.value(r.max(0.0)))
        })
        .collect()
}

/// Row of the radial comparison between a structure and its equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub r: f64,
    pub phi: f64,
    pub n_tf_over_peak: f64,
}

impl ComparisonRow {
    pub const HEADER: [&'static str; 3] = ["r", "phi", "n_tf_over_peak"];

    pub fn values(&self) -> [f64; 3] {
        [self.r, self.phi, self.n_tf_over_peak]
    }
}

/// Samples φ and the peak-normalized TF profile on `points` uniform radii
/// from 0 to R_+. φ is reported as zero inside the central hole.
pub fn comparison_table(
    s: &StationaryStructure,
    eq: &TfEquilibrium,
    points: usize,
) -> Result<Vec<ComparisonRow>> {
    if points < 2 {
        return Err(Error::InvalidArgument(
            "need at least two radial points".into(),
        ));
    }
    let (_, peak) = eq.peak();
    (0..points)
        .map(|i| {
            let r = s.r_outer * i as f64 / (points - 1) as f64;
            let phi = if r < s.r_inner {
                0.0
            } else {
                evaluate_structure(s, &[r.max(s.r_inner)])?[0]
            };
            Ok(ComparisonRow {
                r,
                phi,
                n_tf_over_peak: tf_profile(r, eq)? / peak,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::tf_radii;

    const J01: f64 = 2.404_825_557_695_773;

    #[test]
    fn fundamental_disk_mode() {
        let eq = tf_radii(0.2, 2.4, 1.6).unwrap();
        let s = solve_disk_mode(&eq, 1).unwrap();
        assert!((s.kappa * eq.r_plus() - J01).abs() < 1e-9);
        assert!((s.kappa - 1.3755).abs() < 1e-4);
        assert_eq!(s.b_coef, 0.0);
        assert!((s.a_coef - 1.0).abs() < 1e-12);
        assert_eq!(s.interior_sign_changes(2000), 0);
        let v = evaluate_structure(&s, &[0.0, s.r_outer]).unwrap();
        assert!((v[0] - s.a_coef).abs() < 1e-15);
        assert!(v[1].abs() < 1e-10);
    }

    #[test]
    fn disk_requires_positive_mu() {
        let eq = tf_radii(-0.2, 2.4, 1.6).unwrap();
        assert!(matches!(
            solve_disk_mode(&eq, 1),
            Err(Error::WrongTopology(_))
        ));
        let eq = tf_radii(0.2, 2.4, 1.6).unwrap();
        assert!(matches!(
            solve_annulus_mode(&eq, 1),
            Err(Error::WrongTopology(_))
        ));
    }

    #[test]
    fn fundamental_annulus_mode() {
        let eq = tf_radii(-0.2, 2.4, 1.6).unwrap();
        let s = solve_annulus_mode(&eq, 1).unwrap();
        let (ri, ro) = (eq.r_minus().unwrap(), eq.r_plus());
        // Leading-order estimate π/(R_+ − R_−) ≈ 2.24.
        let estimate = std::f64::consts::PI / (ro - ri);
        assert!((s.kappa - estimate).abs() / estimate < 0.1, "{}", s.kappa);
        assert!(annulus_determinant(s.kappa, ri, ro).unwrap().abs() < 1e-10);
        let (lo, hi) = s.kappa_bracket;
        let d_lo = annulus_determinant(lo, ri, ro).unwrap();
        let d_hi = annulus_determinant(hi, ri, ro).unwrap();
        assert!(d_lo * d_hi <= 0.0);
        assert!(hi - lo <= KAPPA_TOL);
        let v = evaluate_structure(&s, &[ri, ro]).unwrap();
        assert!(v[0].abs() < 1e-10 && v[1].abs() < 1e-10, "{v:?}");
        assert_eq!(s.interior_sign_changes(4000), 0);
    }

    #[test]
    fn normalization_is_unit_peak() {
        for mu in [0.2, -0.2] {
            let eq = tf_radii(mu, 2.4, 1.6).unwrap();
            for n in 1..=3 {
                let s = solve_mode(&eq, n).unwrap();
                let grid: Vec<f64> = (0..=20_000)
                    .map(|i| s.r_inner + (s.r_outer - s.r_inner) * i as f64 / 20_000.0)
                    .collect();
                let vals = evaluate_structure(&s, &grid).unwrap();
                let max = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                // Sampling misses the true peak by O(h²).
                assert!(
                    max <= 1.0 + 1e-12 && max > 1.0 - 1e-7,
                    "mu {mu} n {n}: {max}"
                );
                assert!(vals.iter().any(|v| (*v - max).abs() < 1e-6));
            }
        }
    }

    #[test]
    fn node_count_tracks_mode_index() {
        for mu in [0.2, -0.2] {
            let eq = tf_radii(mu, 2.4, 1.6).unwrap();
            for n in 1..=5 {
                let s = solve_mode(&eq, n).unwrap();
                assert_eq!(s.interior_sign_changes(8000), n - 1, "mu {mu} n {n}");
            }
        }
    }

    #[test]
    fn bracketing_failure_reports_scan() {
        let eq = tf_radii(-0.2, 2.4, 1.6).unwrap();
        match solve_annulus_mode(&eq, 50) {
            Err(Error::RootBracketing { wanted, found, .. }) => {
                assert_eq!(wanted, 50);
                assert!(found < 50 && found > 0);
            }
            other => panic!("expected bracketing failure, got {other:?}"),
        }
    }

    #[test]
    fn evaluate_rejects_out_of_domain() {
        let eq = tf_radii(-0.2, 2.4, 1.6).unwrap();
        let s = solve_annulus_mode(&eq, 1).unwrap();
        assert!(evaluate_structure(&s, &[0.1]).is_err());
        assert!(evaluate_structure(&s, &[2.0]).is_err());
    }

    #[test]
    fn radial_helmholtz_second_order() {
        // φ'' + φ'/r + κ²φ vanishes up to an O(h²) truncation error.
        for mu in [0.2, -0.2] {
            let eq = tf_radii(mu, 2.4, 1.6).unwrap();
            let s = solve_mode(&eq, 1).unwrap();
            let r = 0.5 * (s.r_inner + s.r_outer) + 0.05;
            let err = |h: f64| {
                let v = evaluate_structure(&s, &[r - h, r, r + h]).unwrap();
                let d2 = (v[2] - 2.0 * v[1] + v[0]) / (h * h);
                let d1 = (v[2] - v[0]) / (2.0 * h);
                (d2 + d1 / r + s.kappa * s.kappa * v[1]).abs()
            };
            let (e1, e2) = (err(1e-2), err(5e-3));
            assert!(e1 < 1e-3);
            let ratio = e1 / e2;
            assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
        }
    }

    #[test]
    fn comparison_shapes_differ() {
        let eq = tf_radii(0.2, 2.4, 1.6).unwrap();
        let s = solve_disk_mode(&eq, 1).unwrap();
        let rows = comparison_table(&s, &eq, 201).unwrap();
        assert!(rows.last().unwrap().phi.abs() < 1e-10);
        assert!(rows.last().unwrap().n_tf_over_peak.abs() < 1e-10);
        // The Bessel mode peaks at the centre; the TF disk peaks off-centre.
        let tf_argmax = rows
            .iter()
            .max_by(|a, b| a.n_tf_over_peak.total_cmp(&b.n_tf_over_peak))
            .unwrap();
        assert!(tf_argmax.r > 1.0);
        assert_eq!(rows[0].phi, 1.0);
        let max_gap = rows
            .iter()
            .map(|row| (row.phi - row.n_tf_over_peak).abs())
            .fold(0.0, f64::max);
        assert!(max_gap > 0.3);

        let ring = tf_radii(-0.2, 2.4, 1.6).unwrap();
        let s = solve_annulus_mode(&ring, 1).unwrap();
        let rows = comparison_table(&s, &ring, 201).unwrap();
        assert!(rows
            .iter()
            .filter(|r| r.r < s.r_inner)
            .all(|r| r.phi == 0.0 && r.n_tf_over_peak == 0.0));
    }
}
