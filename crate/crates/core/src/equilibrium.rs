//! Thomas–Fermi equilibria of the rotating anharmonic trap.
//!
//! In trap units (lengths in a_ho, μ in ħω_⊥) the density is the quartic
//!
//! n0(r)/n_∞ = (R_+² − r²)(r² − R_−²),
//!
//! with R_±² = A ± sqrt(A² + 2μ/β) and A = (Ω²/ω_⊥² − 1)/(2β). For μ > 0 the
//! root R_−² is negative and the cloud is a disk; for μ < 0 both roots are
//! positive and the cloud is an annulus R_− < r < R_+.
//!
//! n_∞ = βħω_⊥/(2g) is the quartic prefactor. The actual density maximum is
//! A² + 2μ/β at r² = A when A lies inside the support, which exceeds one
//! prefactor unit in the annulus regime of strong rotation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::TrapParams;

/// Radii and topology of a Thomas–Fermi cloud.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TfEquilibrium {
    /// μ/ħω_⊥
    pub mu: f64,
    /// Ω/ω_⊥
    pub omega_ratio: f64,
    pub beta: f64,
    /// R_+² in a_ho².
    pub r_plus_sq: f64,
    /// R_−² in a_ho²; negative when R_− is imaginary (disk).
    pub r_minus_sq: f64,
}

impl TfEquilibrium {
    pub fn trap(&self) -> TrapParams {
        TrapParams {
            omega_ratio: self.omega_ratio,
            beta: self.beta,
            mu: self.mu,
        }
    }

    /// A central hole exists (μ < 0).
    pub fn is_annulus(&self) -> bool {
        self.r_minus_sq > 0.0
    }

    pub fn r_plus(&self) -> f64 {
        self.r_plus_sq.sqrt()
    }

    /// Real inner radius, `None` when R_− is imaginary.
    pub fn r_minus(&self) -> Option<f64> {
        (self.r_minus_sq >= 0.0).then(|| self.r_minus_sq.sqrt())
    }

    /// Inner edge of the support: R_− for an annulus, zero for a disk.
    pub fn inner_edge(&self) -> f64 {
        self.r_minus().unwrap_or(0.0)
    }

    /// The unclipped quartic (R_+² − r²)(r² − R_−²).
    fn quartic(&self, r: f64) -> f64 {
        let r2 = r * r;
        (self.r_plus_sq - r2) * (r2 - self.r_minus_sq)
    }

    /// Location and value of the density maximum, in a_ho and n_∞ units.
    pub fn peak(&self) -> (f64, f64) {
        let mid = 0.5 * (self.r_plus_sq + self.r_minus_sq);
        let r2 = mid.max(0.0);
        let r = r2.sqrt();
        (r, self.quartic(r))
    }
}

/// Solves for the Thomas–Fermi radii.
pub fn tf_radii(mu: f64, omega_ratio: f64, beta: f64) -> Result<TfEquilibrium> {
    let trap = TrapParams::new(omega_ratio, beta, mu)?;
    if !(trap.beta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "quartic equilibrium requires beta > 0",
        });
    }
    let a = (omega_ratio * omega_ratio - 1.0) / (2.0 * beta);
    let c = 2.0 * mu / beta;
    let discriminant = a * a + c;
    if discriminant < 0.0 {
        return Err(Error::NoEquilibrium { discriminant });
    }
    let root = discriminant.sqrt();
    let r_plus_sq = a + root;
    if r_plus_sq <= 0.0 {
        return Err(Error::EmptyCloud { r_plus_sq });
    }
    // R_+² R_−² = −c. Dividing avoids cancellation in a − root when |c| ≪ a².
    let r_minus_sq = if mu == 0.0 { 0.0 } else { -c / r_plus_sq };
    Ok(TfEquilibrium {
        mu,
        omega_ratio,
        beta,
        r_plus_sq,
        r_minus_sq,
    })
}

/// n0(r)/n_∞, clipped to zero outside the support.
pub fn tf_profile(r: f64, eq: &TfEquilibrium) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radius must be non-negative, got {r}"
        )));
    }
    Ok(eq.quartic(r).max(0.0))
}

/// d(ln n0)/dr in 1/a_ho, valid strictly inside the support.
pub fn log_density_gradient(r: f64, eq: &TfEquilibrium) -> Result<f64> {
    if !(r >= 0.0) || eq.quartic(r) <= 0.0 {
        return Err(Error::SingularGradient { r });
    }
    let r2 = r * r;
    Ok(-2.0 * r / (eq.r_plus_sq - r2) + 2.0 * r / (r2 - eq.r_minus_sq))
}

/// Profile row for CSV output; `dlnn_dr` is NaN outside the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub r: f64,
    pub n_over_ninf: f64,
    pub dlnn_dr: f64,
}

impl ProfileRow {
    pub const HEADER: [&'static str; 3] = ["r", "n_over_ninf", "dlnn_dr"];

    pub fn values(&self) -> [f64; 3] {
        [self.r, self.n_over_ninf, self.dlnn_dr]
    }
}

pub fn profile_table(eq: &TfEquilibrium, radii: &[f64]) -> Result<Vec<ProfileRow>> {
    radii
        .iter()
        .map(|&r| {
            Ok(ProfileRow {
                r,
                n_over_ninf: tf_profile(r, eq)?,
                dlnn_dr: log_density_gradient(r, eq).unwrap_or(f64::NAN),
            })
        })
        .collect()
}
