//! Finite-difference evaluation of the stationary bracket equation on a
//! regular polar grid:
//!
//! R = (1 + ξ²∇²/2){φ, ∇²φ} − (ξ²/2){φ, ∇⁴φ},  {a, b} = (a_r b_θ − b_r a_θ)/r.
//!
//! Derivatives are fourth-order central differences, periodic in θ. Every
//! radial derivative shrinks the valid band by two rows; the residual is
//! reported as a max-norm over the rows where all stencils fit.

use crate::error::{Error, Result};

use super::StationaryStructure;

/// Minimum grid points along each axis.
pub const MIN_POINTS: usize = 16;
const HALF_WIDTH: usize = 2;

/// Real field sampled at r_i = r_start + i·dr, θ_j = 2πj/n_theta.
/// Values are stored row-major in r.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarField {
    pub r_start: f64,
    pub dr: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub values: Vec<f64>,
}

impl PolarField {
    pub fn from_fn<F: Fn(f64, f64) -> f64>(
        r_start: f64,
        dr: f64,
        n_r: usize,
        n_theta: usize,
        f: F,
    ) -> Result<Self> {
        check_resolution(n_r, n_theta)?;
        if !(r_start > 0.0 && dr > 0.0) {
            return Err(Error::InvalidArgument(
                "polar grid needs r_start > 0 and dr > 0".into(),
            ));
        }
        let dtheta = std::f64::consts::TAU / n_theta as f64;
        let mut values = Vec::with_capacity(n_r * n_theta);
        for i in 0..n_r {
            let r = r_start + i as f64 * dr;
            for j in 0..n_theta {
                values.push(f(r, j as f64 * dtheta));
            }
        }
        Ok(Self {
            r_start,
            dr,
            n_r,
            n_theta,
            values,
        })
    }

    /// A solved structure revolved in θ, sampled at cell centres of its
    /// radial support.
    pub fn from_structure(s: &StationaryStructure, n_r: usize, n_theta: usize) -> Result<Self> {
        check_resolution(n_r, n_theta)?;
        let dr = (s.r_outer - s.r_inner) / n_r as f64;
        let radii: Vec<f64> = (0..n_r)
            .map(|i| s.r_inner + (i as f64 + 0.5) * dr)
            .collect();
        let radial = super::evaluate_structure(s, &radii)?;
        let values = radial
            .iter()
            .flat_map(|v| std::iter::repeat_n(*v, n_theta))
            .collect();
        Ok(Self {
            r_start: radii[0],
            dr,
            n_r,
            n_theta,
            values,
        })
    }

    fn radius(&self, i: usize) -> f64 {
        self.r_start + i as f64 * self.dr
    }

    fn like(&self, values: Vec<f64>) -> Self {
        Self {
            values,
            ..self.clone()
        }
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.n_r != other.n_r || self.n_theta != other.n_theta || self.dr != other.dr {
            return Err(Error::Shape(format!(
                "polar grids differ: {}x{} vs {}x{}",
                self.n_r, self.n_theta, other.n_r, other.n_theta
            )));
        }
        Ok(())
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_theta + j]
    }

    fn d_theta(&self, i: usize, j: usize) -> f64 {
        let n = self.n_theta;
        let h = std::f64::consts::TAU / n as f64;
        let jm2 = (j + n - 2) % n;
        let jm1 = (j + n - 1) % n;
        let jp1 = (j + 1) % n;
        let jp2 = (j + 2) % n;
        (self.at(i, jm2) - 8.0 * self.at(i, jm1) + 8.0 * self.at(i, jp1) - self.at(i, jp2))
            / (12.0 * h)
    }

    fn d_theta2(&self, i: usize, j: usize) -> f64 {
        let n = self.n_theta;
        let h = std::f64::consts::TAU / n as f64;
        let jm2 = (j + n - 2) % n;
        let jm1 = (j + n - 1) % n;
        let jp1 = (j + 1) % n;
        let jp2 = (j + 2) % n;
        (-self.at(i, jm2) + 16.0 * self.at(i, jm1) - 30.0 * self.at(i, j) + 16.0 * self.at(i, jp1)
            - self.at(i, jp2))
            / (12.0 * h * h)
    }

    /// Requires HALF_WIDTH ≤ i < n_r − HALF_WIDTH.
    fn d_r(&self, i: usize, j: usize) -> f64 {
        (self.at(i - 2, j) - 8.0 * self.at(i - 1, j) + 8.0 * self.at(i + 1, j) - self.at(i + 2, j))
            / (12.0 * self.dr)
    }

    fn d_r2(&self, i: usize, j: usize) -> f64 {
        (-self.at(i - 2, j) + 16.0 * self.at(i - 1, j) - 30.0 * self.at(i, j)
            + 16.0 * self.at(i + 1, j)
            - self.at(i + 2, j))
            / (12.0 * self.dr * self.dr)
    }

    /// Max |value| over rows [margin, n_r − margin).
    fn max_abs_inside(&self, margin: usize) -> f64 {
        let mut m = 0.0f64;
        for i in margin..self.n_r.saturating_sub(margin) {
            for j in 0..self.n_theta {
                m = m.max(self.at(i, j).abs());
            }
        }
        m
    }
}

fn check_resolution(n_r: usize, n_theta: usize) -> Result<()> {
    if n_r < MIN_POINTS {
        return Err(Error::Resolution {
            axis: "r",
            got: n_r,
            min: MIN_POINTS,
        });
    }
    if n_theta < MIN_POINTS {
        return Err(Error::Resolution {
            axis: "theta",
            got: n_theta,
            min: MIN_POINTS,
        });
    }
    Ok(())
}

/// ∇²f = f_rr + f_r/r + f_θθ/r², valid two rows in from each radial edge
/// (rows outside are zero).
pub fn polar_laplacian(f: &PolarField) -> PolarField {
    let mut out = vec![0.0; f.values.len()];
    for i in HALF_WIDTH..f.n_r.saturating_sub(HALF_WIDTH) {
        let r = f.radius(i);
        for j in 0..f.n_theta {
            out[i * f.n_theta + j] = f.d_r2(i, j) + f.d_r(i, j) / r + f.d_theta2(i, j) / (r * r);
        }
    }
    f.like(out)
}

/// {a, b} = (a_r b_θ − b_r a_θ)/r.
pub fn poisson_bracket(a: &PolarField, b: &PolarField) -> Result<PolarField> {
    a.same_grid(b)?;
    let mut out = vec![0.0; a.values.len()];
    for i in HALF_WIDTH..a.n_r.saturating_sub(HALF_WIDTH) {
        let r = a.radius(i);
        for j in 0..a.n_theta {
            out[i * a.n_theta + j] =
                (a.d_r(i, j) * b.d_theta(i, j) - b.d_r(i, j) * a.d_theta(i, j)) / r;
        }
    }
    Ok(a.like(out))
}

/// Max-norm of the stationary bracket equation for `phi` at healing length
/// `xi` (same length unit as the grid).
pub fn stationarity_residual(phi: &PolarField, xi: f64) -> Result<f64> {
    check_resolution(phi.n_r, phi.n_theta)?;
    let lap = polar_laplacian(phi); // valid from row 2
    let bilap = polar_laplacian(&lap); // 4
    let b1 = poisson_bracket(phi, &lap)?; // 4
    let b2 = poisson_bracket(phi, &bilap)?; // 6
    let lap_b1 = polar_laplacian(&b1); // 6
    let half = 0.5 * xi * xi;
    let values = b1
        .values
        .iter()
        .zip(&lap_b1.values)
        .zip(&b2.values)
        .map(|((b1, lb1), b2)| b1 + half * lb1 - half * b2)
        .collect();
    let margin = 3 * HALF_WIDTH;
    if phi.n_r <= 2 * margin {
        return Err(Error::Resolution {
            axis: "r",
            got: phi.n_r,
            min: 2 * margin + 1,
        });
    }
    Ok(phi.like(values).max_abs_inside(margin))
}
