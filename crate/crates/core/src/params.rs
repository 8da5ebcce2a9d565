//! Physical inputs and the characteristic scales derived from them.
//!
//! Two dimensionless unit systems are used downstream:
//!
//! - trap units: lengths in `a_ho`, energies in `ħω_⊥`, frequencies in `ω_⊥`
//!   (equilibria and stationary structures);
//! - wave units: lengths in `r0`, speeds in `c_s`, times in `r0/c_s`
//!   (dispersion and spectral dynamics). In these units `2Ω = 1`.
//!
//! [`UnitSystem`] converts between them. Only this module touches SI values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Trap, rotation and interaction inputs in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Transverse trap frequency ω_⊥ (rad/s).
    pub omega_perp: f64,
    /// Rotation rate Ω (rad/s).
    pub omega: f64,
    /// Quartic anharmonicity, dimensionless.
    pub beta: f64,
    /// Contact interaction strength g (J·m³).
    pub g_int: f64,
    /// Atomic mass (kg).
    pub mass: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Chemical potential in units of ħω_⊥ (signed).
    pub mu: f64,
}

/// Dimensionless trap description used by the equilibrium solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapParams {
    /// Ω/ω_⊥.
    pub omega_ratio: f64,
    pub beta: f64,
    /// μ in ħω_⊥.
    pub mu: f64,
}

/// Scales derived from [`PhysicalParams`], SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedScales {
    /// Harmonic-oscillator length sqrt(ħ/(mω_⊥)) (m).
    pub a_ho: f64,
    /// Sound speed sqrt(g n_∞/m) (m/s).
    pub c_s: f64,
    /// Healing length ħ/sqrt(2 m g n_∞) (m).
    pub xi: f64,
    /// Rossby radius c_s/(2Ω) (m).
    pub r0: f64,
    /// Density prefactor n_∞ = βħω_⊥/(2g) (1/m³).
    pub n_inf: f64,
    /// Rossby number r0/a_ho.
    pub rossby: f64,
    /// Drift speed (m/s), once an equilibrium gradient has been fixed.
    pub v_r: Option<f64>,
    /// Retained so that conversions to trap frequency units stay possible.
    pub omega_perp: f64,
}

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}

impl TrapParams {
    pub fn new(omega_ratio: f64, beta: f64, mu: f64) -> Result<Self> {
        let t = Self {
            omega_ratio,
            beta,
            mu,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_ratio.is_finite() && self.omega_ratio >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega_ratio",
                value: self.omega_ratio,
                reason: "must be finite and non-negative",
            });
        }
        if !self.mu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: self.mu,
                reason: "must be finite",
            });
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: self.beta,
                reason: "must be finite and non-negative",
            });
        }
        if self.omega_ratio >= 1.0 && self.beta <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: self.beta,
                reason: "must be positive when Omega >= omega_perp (potential unbounded below)",
            });
        }
        Ok(())
    }

    /// V(r)/ħω_⊥ = ½[(1 − Ω²/ω_⊥²) r² + β r⁴] with `r` in units of a_ho.
    pub fn effective_potential(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "radius must be non-negative, got {r}"
            )));
        }
        let r2 = r * r;
        let harmonic = 1.0 - self.omega_ratio * self.omega_ratio;
        Ok(0.5 * (harmonic * r2 + self.beta * r2 * r2))
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("omega_perp", self.omega_perp)?;
        require_positive("mass", self.mass)?;
        require_positive("g_int", self.g_int)?;
        require_positive("hbar", self.hbar)?;
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: self.omega,
                reason: "must be finite and non-negative",
            });
        }
        self.trap().validate()
    }

    /// Builds parameters that reproduce given laboratory scales.
    ///
    /// The mass follows from `a_ho` and `omega_perp`; β follows from
    /// c_s² = βħω_⊥/(2m), which holds because g cancels between n_∞ and c_s.
    pub fn from_lab_scales(
        omega_perp: f64,
        omega: f64,
        a_ho: f64,
        c_s: f64,
        g_int: f64,
        mu: f64,
    ) -> Result<Self> {
        require_positive("omega_perp", omega_perp)?;
        require_positive("a_ho", a_ho)?;
        require_positive("c_s", c_s)?;
        let mass = HBAR / (omega_perp * a_ho * a_ho);
        let beta = 2.0 * (c_s / (omega_perp * a_ho)).powi(2);
        let p = Self {
            omega_perp,
            omega,
            beta,
            g_int,
            mass,
            hbar: HBAR,
            mu,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn trap(&self) -> TrapParams {
        TrapParams {
            omega_ratio: self.omega / self.omega_perp,
            beta: self.beta,
            mu: self.mu,
        }
    }
}

/// Computes a_ho, n_∞, c_s, ξ, r0 and the Rossby number.
pub fn derive_scales(p: &PhysicalParams) -> Result<DerivedScales> {
    p.validate()?;
    require_positive("beta", p.beta)?;
    if p.omega == 0.0 {
        return Err(Error::ZeroRotation);
    }
    let a_ho = (p.hbar / (p.mass * p.omega_perp)).sqrt();
    let n_inf = p.beta * p.hbar * p.omega_perp / (2.0 * p.g_int);
    let c_s = (p.g_int * n_inf / p.mass).sqrt();
    let xi = p.hbar / (2.0 * p.mass * p.g_int * n_inf).sqrt();
    let r0 = c_s / (2.0 * p.omega);
    Ok(DerivedScales {
        a_ho,
        c_s,
        xi,
        r0,
        n_inf,
        rossby: r0 / a_ho,
        v_r: None,
        omega_perp: p.omega_perp,
    })
}

/// V(r)/ħω_⊥ for `r` in units of a_ho.
pub fn effective_potential(r: f64, p: &PhysicalParams) -> Result<f64> {
    let trap = p.trap();
    trap.validate()?;
    trap.effective_potential(r)
}

/// Conversions between trap units and wave units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// r0/a_ho, i.e. the Rossby number.
    pub r0_over_aho: f64,
    /// ω_⊥ expressed in c_s/r0.
    pub omega_perp_wave: f64,
}

impl UnitSystem {
    pub fn from_scales(s: &DerivedScales) -> Self {
        Self {
            r0_over_aho: s.r0 / s.a_ho,
            omega_perp_wave: s.omega_perp * s.r0 / s.c_s,
        }
    }

    /// Wave units follow from the trap alone: c_s = ω_⊥ a_ho sqrt(β/2) and
    /// r0 = c_s/(2Ω), so r0/a_ho = sqrt(β/2)/(2 Ω/ω_⊥).
    pub fn from_trap(trap: &TrapParams) -> Result<Self> {
        trap.validate()?;
        require_positive("beta", trap.beta)?;
        if trap.omega_ratio == 0.0 {
            return Err(Error::ZeroRotation);
        }
        let r0_over_aho = (trap.beta / 2.0).sqrt() / (2.0 * trap.omega_ratio);
        Ok(Self {
            r0_over_aho,
            omega_perp_wave: 1.0 / (2.0 * trap.omega_ratio),
        })
    }

    pub fn length_ho_to_r0(&self, x: f64) -> f64 {
        x / self.r0_over_aho
    }

    pub fn length_r0_to_ho(&self, x: f64) -> f64 {
        x * self.r0_over_aho
    }

    pub fn wavenumber_ho_to_r0(&self, k: f64) -> f64 {
        k * self.r0_over_aho
    }

    pub fn wavenumber_r0_to_ho(&self, k: f64) -> f64 {
        k / self.r0_over_aho
    }

    /// Frequency in ω_⊥ to frequency in c_s/r0.
    pub fn freq_perp_to_wave(&self, w: f64) -> f64 {
        w * self.omega_perp_wave
    }

    pub fn freq_wave_to_perp(&self, w: f64) -> f64 {
        w / self.omega_perp_wave
    }

    /// v_R/c_s = −(r0/a_ho)·∂_r ln n0 for a log-density gradient given in 1/a_ho.
    ///
    /// Follows from v_R = −2Ω r0² ∂_r ln n0 with 2Ω r0 = c_s.
    pub fn drift_speed(&self, dlnn_dr_ho: f64) -> f64 {
        -self.r0_over_aho * dlnn_dr_ho
    }
}

/// Parameter file accepted by the CLI. Every key is optional; unknown keys
/// are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub omega_perp_hz: Option<f64>,
    pub omega_ratio: Option<f64>,
    pub beta: Option<f64>,
    pub mu_hbar_omega: Option<f64>,
    pub xi_over_r0: Option<f64>,
    pub v_r_over_cs: Option<f64>,
}

impl ParamFile {
    /// Trap parameters, requiring the three trap keys to be present.
    pub fn trap(&self) -> Result<TrapParams> {
        let missing = |k: &str| Error::InvalidArgument(format!("missing parameter `{k}`"));
        TrapParams::new(
            self.omega_ratio.ok_or_else(|| missing("omega_ratio"))?,
            self.beta.ok_or_else(|| missing("beta"))?,
            self.mu_hbar_omega.ok_or_else(|| missing("mu_hbar_omega"))?,
        )
    }
}
