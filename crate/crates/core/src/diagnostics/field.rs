//! Real-space fields on a periodic square grid in wave units.
//!
//! Transform convention: φ(x) = Σ_k φ_k e^{ik·x}, and the forward transform
//! is the grid sum divided by the number of grid points, so that
//! Σ|φ_k|² equals the grid mean of φ².
//!
//! Velocities (2Ω = 1, r0 = 1, c_s = 1):
//!
//! S   = −∇φ + (ξ²/2)∇(∇²φ)
//! v0  = ẑ × S
//! v_p = ∂S/∂t + (v0·∇)S
//!
//! The polarization drift is taken with the sign that makes the continuity
//! balance ∂φ/∂t + v0·∇φ + v0·∇ln n0 + ∇·v_p = 0 reproduce the linear
//! dispersion relation, with ∇ln n0 = (−v_R, 0) for a constant drift speed.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::dispersion::ModelParams;
use crate::error::{Error, Result};
use crate::spectral::{ModeSet, SpectralState};

/// Minimum points per axis for the five-point stencils.
pub const MIN_GRID: usize = 16;

/// Scalar field φ = δn/n_∞ sampled at x = i·dx, y = j·dx, stored row-major
/// in x (`values[i * n + j]`).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSnapshot {
    pub n: usize,
    pub dx: f64,
    pub values: Vec<f64>,
    pub params: ModelParams,
}

/// Two-component field on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl VectorField {
    pub fn max_norm(&self) -> f64 {
        self.x
            .iter()
            .zip(&self.y)
            .map(|(a, b)| a.hypot(*b))
            .fold(0.0, f64::max)
    }
}

impl FieldSnapshot {
    pub fn from_fn<F: Fn(f64, f64) -> f64>(
        n: usize,
        dx: f64,
        params: ModelParams,
        f: F,
    ) -> Result<Self> {
        check_grid(n)?;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(f(i as f64 * dx, j as f64 * dx));
            }
        }
        Ok(Self {
            n,
            dx,
            values,
            params,
        })
    }

    /// Synthesizes φ(x) from a spectral state on an n×n grid spanning one
    /// period 2π/spacing.
    pub fn from_spectrum(
        modes: &ModeSet,
        state: &SpectralState,
        n: usize,
        params: ModelParams,
    ) -> Result<Self> {
        check_grid(n)?;
        if 2 * modes.max_index() as usize >= n {
            return Err(Error::Resolution {
                axis: "x",
                got: n,
                min: 2 * modes.max_index() as usize + 1,
            });
        }
        let wrap = |i: i32| i.rem_euclid(n as i32) as usize;
        let mut buf = vec![Complex64::new(0.0, 0.0); n * n];
        for (idx, a) in modes.indices().iter().zip(&state.amplitudes) {
            buf[wrap(idx.0) * n + wrap(idx.1)] += a;
        }
        fft2(&mut buf, n, true);
        let dx = std::f64::consts::TAU / (modes.spacing * n as f64);
        Ok(Self {
            n,
            dx,
            values: buf.iter().map(|c| c.re).collect(),
            params,
        })
    }

    /// Forward transform φ_k = (1/n²) Σ_x φ(x) e^{−ik·x}, in FFT index order.
    pub fn to_spectrum(&self) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = self
            .values
            .iter()
            .map(|v| Complex64::new(*v, 0.0))
            .collect();
        fft2(&mut buf, self.n, false);
        let norm = 1.0 / (self.n * self.n) as f64;
        buf.iter().map(|c| c * norm).collect()
    }

    pub fn mean_square(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64
    }

    fn like(&self, values: Vec<f64>) -> Self {
        Self {
            values,
            ..self.clone()
        }
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.dx != other.dx {
            return Err(Error::Shape(format!(
                "grids differ: {}@{} vs {}@{}",
                self.n, self.dx, other.n, other.dx
            )));
        }
        Ok(())
    }

    fn idx(&self, i: isize, j: isize) -> usize {
        let n = self.n as isize;
        (i.rem_euclid(n) * n + j.rem_euclid(n)) as usize
    }

    fn stencil<F: Fn(&[f64; 5]) -> f64>(&self, along_x: bool, f: F) -> Vec<f64> {
        let n = self.n as isize;
        let mut out = Vec::with_capacity(self.values.len());
        for i in 0..n {
            for j in 0..n {
                let pick = |o: isize| {
                    if along_x {
                        self.values[self.idx(i + o, j)]
                    } else {
                        self.values[self.idx(i, j + o)]
                    }
                };
                out.push(f(&[pick(-2), pick(-1), pick(0), pick(1), pick(2)]));
            }
        }
        out
    }

    /// Fourth-order first derivative.
    pub fn d(&self, along_x: bool) -> Self {
        let h = self.dx;
        self.like(self.stencil(along_x, |s| {
            (s[0] - 8.0 * s[1] + 8.0 * s[3] - s[4]) / (12.0 * h)
        }))
    }

    /// Fourth-order second derivative.
    pub fn d2(&self, along_x: bool) -> Self {
        let h2 = self.dx * self.dx;
        self.like(self.stencil(along_x, |s| {
            (-s[0] + 16.0 * s[1] - 30.0 * s[2] + 16.0 * s[3] - s[4]) / (12.0 * h2)
        }))
    }

    pub fn laplacian(&self) -> Self {
        let xx = self.d2(true);
        let yy = self.d2(false);
        self.like(
            xx.values
                .iter()
                .zip(&yy.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

fn check_grid(n: usize) -> Result<()> {
    if n < MIN_GRID {
        return Err(Error::Resolution {
            axis: "x",
            got: n,
            min: MIN_GRID,
        });
    }
    Ok(())
}

fn fft2(buf: &mut [Complex64], n: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let plan = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    plan.process(buf);
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for i in 0..n {
            col[i] = buf[i * n + j];
        }
        plan.process(&mut col);
        for i in 0..n {
            buf[i * n + j] = col[i];
        }
    }
}

/// S = −∇φ + (ξ²/2)∇(∇²φ).
pub fn source_field(snap: &FieldSnapshot) -> Result<VectorField> {
    check_grid(snap.n)?;
    let half = 0.5 * snap.params.xi * snap.params.xi;
    let lap = snap.laplacian();
    let comp = |along_x: bool| {
        let g = snap.d(along_x);
        let gl = lap.d(along_x);
        g.values
            .iter()
            .zip(&gl.values)
            .map(|(a, b)| -a + half * b)
            .collect::<Vec<_>>()
    };
    Ok(VectorField {
        x: comp(true),
        y: comp(false),
    })
}

/// v0 = ẑ × S = (−S_y, S_x).
pub fn drift_velocity_field(snap: &FieldSnapshot) -> Result<VectorField> {
    let s = source_field(snap)?;
    Ok(VectorField {
        x: s.y.iter().map(|v| -v).collect(),
        y: s.x,
    })
}

/// v_p = ∂S/∂t + (v0·∇)S, with ∂S/∂t = S[∂φ/∂t] by linearity.
pub fn polarization_velocity_field(
    snap: &FieldSnapshot,
    dphi_dt: &FieldSnapshot,
) -> Result<VectorField> {
    snap.same_grid(dphi_dt)?;
    let s = source_field(snap)?;
    let ds = source_field(&FieldSnapshot {
        params: snap.params,
        ..dphi_dt.clone()
    })?;
    let v0 = drift_velocity_field(snap)?;
    let advect = |comp: &[f64]| {
        let f = snap.like(comp.to_vec());
        let fx = f.d(true);
        let fy = f.d(false);
        (0..comp.len())
            .map(|c| v0.x[c] * fx.values[c] + v0.y[c] * fy.values[c])
            .collect::<Vec<_>>()
    };
    let ax = advect(&s.x);
    let ay = advect(&s.y);
    Ok(VectorField {
        x: ds.x.iter().zip(&ax).map(|(a, b)| a + b).collect(),
        y: ds.y.iter().zip(&ay).map(|(a, b)| a + b).collect(),
    })
}

/// Pointwise ∂φ/∂t + v0·∇φ + v0·∇ln n0 + ∇·v_p with ∇ln n0 = (−v_R, 0).
pub fn continuity_residual(snap: &FieldSnapshot, dphi_dt: &FieldSnapshot) -> Result<FieldSnapshot> {
    let v0 = drift_velocity_field(snap)?;
    let vp = polarization_velocity_field(snap, dphi_dt)?;
    let px = snap.d(true);
    let py = snap.d(false);
    let div = {
        let a = snap.like(vp.x.clone()).d(true);
        let b = snap.like(vp.y.clone()).d(false);
        a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| x + y)
            .collect::<Vec<_>>()
    };
    let v_r = snap.params.v_r;
    let values = (0..snap.values.len())
        .map(|c| {
            dphi_dt.values[c] + v0.x[c] * px.values[c] + v0.y[c] * py.values[c] - v0.x[c] * v_r
                + div[c]
        })
        .collect();
    Ok(snap.like(values))
}
