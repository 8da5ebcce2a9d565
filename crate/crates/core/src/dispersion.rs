//! Linear Rossby-wave dispersion in wave units (lengths in r0, speeds in c_s).
//!
//! ω(k) = −v_R k_θ N / (1 + k² N),  N = 1 + ξ² k²/2.
//!
//! For ξ = 0 this is the Charney–Hasegawa–Mima relation. The zonal phase
//! speed ω/k_θ = −v_R N/(1 + k²N) is negative whenever v_R > 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// Two-dimensional wave vector in 1/r0 units. `k_r` is radial, `k_theta`
/// zonal (azimuthal).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WaveVector {
    pub k_r: f64,
    pub k_theta: f64,
}

impl WaveVector {
    pub const fn new(k_r: f64, k_theta: f64) -> Self {
        Self { k_r, k_theta }
    }

    pub fn norm_sq(&self) -> f64 {
        self.k_r * self.k_r + self.k_theta * self.k_theta
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// z-component of `self × other`.
    pub fn cross(&self, other: &WaveVector) -> f64 {
        self.k_r * other.k_theta - self.k_theta * other.k_r
    }
}

impl std::ops::Add for WaveVector {
    type Output = WaveVector;
    fn add(self, o: WaveVector) -> WaveVector {
        WaveVector::new(self.k_r + o.k_r, self.k_theta + o.k_theta)
    }
}

impl std::ops::Neg for WaveVector {
    type Output = WaveVector;
    fn neg(self) -> WaveVector {
        WaveVector::new(-self.k_r, -self.k_theta)
    }
}

/// Drift speed and healing length, both dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// v_R in units of c_s.
    pub v_r: f64,
    /// ξ in units of r0; zero is the Thomas–Fermi limit.
    pub xi: f64,
}

impl ModelParams {
    pub fn new(v_r: f64, xi: f64) -> Result<Self> {
        let m = Self { v_r, xi };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.v_r.is_finite() {
            return Err(Error::InvalidParameter {
                name: "v_r",
                value: self.v_r,
                reason: "must be finite",
            });
        }
        if !(self.xi.is_finite() && self.xi >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "xi",
                value: self.xi,
                reason: "must be finite and non-negative",
            });
        }
        Ok(())
    }

    /// Quantum-pressure factor N = 1 + ξ²k²/2.
    #[inline]
    pub fn pressure_factor(&self, k_sq: f64) -> f64 {
        1.0 + 0.5 * self.xi * self.xi * k_sq
    }

    /// Linear operator symbol 1 + k² + ξ²k⁴/2 = 1 + k² N.
    #[inline]
    pub fn inertia(&self, k_sq: f64) -> f64 {
        1.0 + k_sq * self.pressure_factor(k_sq)
    }
}

/// Zonal phase speed ω/k_θ, continuous through k_θ = 0.
#[inline]
fn zonal_phase_speed(k_sq: f64, m: &ModelParams) -> f64 {
    -m.v_r * m.pressure_factor(k_sq) / m.inertia(k_sq)
}

/// Wave frequency in c_s/r0.
pub fn omega(k: &WaveVector, m: &ModelParams) -> f64 {
    k.k_theta * zonal_phase_speed(k.norm_sq(), m)
}

/// Analytic group velocity together with the short-wavelength estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupVelocity {
    /// ∂ω/∂k_r
    pub cg_r: f64,
    /// ∂ω/∂k_θ
    pub cg_theta: f64,
    /// −v_R/k², short-wavelength zonal phase speed.
    pub c_ph_short: f64,
    /// v_R (2k_θ/k − 1)/k², the short-wavelength zonal group speed as
    /// usually quoted.
    pub cg_theta_short_quoted: f64,
    /// v_R (2k_θ²/k² − 1)/k², the exact k² ≫ 1 limit of ∂ω/∂k_θ at ξ = 0.
    pub cg_theta_short_gradient: f64,
}

/// Gradient of [`omega`] with respect to (k_r, k_θ).
pub fn group_velocity(k: &WaveVector, m: &ModelParams) -> Result<GroupVelocity> {
    let k_sq = k.norm_sq();
    if k_sq == 0.0 {
        return Err(Error::UndefinedGradient);
    }
    // ω = −v k_θ F(q), q = k², F = N/(1 + qN), F'(q) = (N' − N²)/(1 + qN)².
    let n = m.pressure_factor(k_sq);
    let dn = 0.5 * m.xi * m.xi;
    let denom = m.inertia(k_sq);
    let f = n / denom;
    let df = (dn - n * n) / (denom * denom);
    let cg_r = -m.v_r * k.k_theta * df * 2.0 * k.k_r;
    let cg_theta = -m.v_r * (f + 2.0 * k.k_theta * k.k_theta * df);
    let k_norm = k_sq.sqrt();
    Ok(GroupVelocity {
        cg_r,
        cg_theta,
        c_ph_short: -m.v_r / k_sq,
        cg_theta_short_quoted: m.v_r * (2.0 * k.k_theta / k_norm - 1.0) / k_sq,
        cg_theta_short_gradient: m.v_r * (2.0 * k.k_theta * k.k_theta / k_sq - 1.0) / k_sq,
    })
}

/// One row of a dispersion scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionRow {
    pub k: WaveVector,
    pub omega: f64,
    pub c_ph_zonal: f64,
    pub cg_r: f64,
    pub cg_theta: f64,
}

impl DispersionRow {
    pub const HEADER: [&'static str; 6] =
        ["k_r", "k_theta", "omega", "c_ph_zonal", "cg_r", "cg_theta"];

    pub fn values(&self) -> [f64; 6] {
        [
            self.k.k_r,
            self.k.k_theta,
            self.omega,
            self.c_ph_zonal,
            self.cg_r,
            self.cg_theta,
        ]
    }
}

/// Evaluates frequency, zonal phase speed and group velocity at every k, in
/// input order. At k = 0 the group velocity is reported by its limit
/// (0, −v_R).
pub fn dispersion_scan(ks: &[WaveVector], m: &ModelParams) -> Result<Vec<DispersionRow>> {
    if ks.is_empty() {
        return Err(Error::InvalidArgument("empty wave-vector range".into()));
    }
    m.validate()?;
    Ok(par::map_slice(ks, |k| {
        let (cg_r, cg_theta) = match group_velocity(k, m) {
            Ok(g) => (g.cg_r, g.cg_theta),
            Err(_) => (0.0, -m.v_r),
        };
        DispersionRow {
            k: *k,
            omega: omega(k, m),
            c_ph_zonal: zonal_phase_speed(k.norm_sq(), m),
            cg_r,
            cg_theta,
        }
    }))
}

/// Evenly spaced zonal wave vectors (0, k_θ) for k_θ in [from, to].
pub fn zonal_line(from: f64, to: f64, n: usize) -> Vec<WaveVector> {
    match n {
        0 => Vec::new(),
        1 => vec![WaveVector::new(0.0, from)],
        _ => (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                WaveVector::new(0.0, from + (to - from) * t)
            })
            .collect(),
    }
}
