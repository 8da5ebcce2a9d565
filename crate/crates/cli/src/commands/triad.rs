use clap::Args;
use num_complex::Complex64;
use rossby_core::dispersion::ModelParams;
use rossby_core::spectral::{
    build_mode_grid, decay_channel, find_resonant_triads, integrate_triad, triad_couplings, Triad,
    TriadSearch,
};
use serde::Serialize;

use super::Common;
use crate::config::{load, opt, TriadConfig};
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, reals, write_csv, write_json, Cell};

/// Find lattice-resonant triads and integrate one as a closed system.
#[derive(Debug, Args)]
pub struct TriadArgs {
    #[command(flatten)]
    pub common: Common,
    /// Lattice points per axis (even, >= 8).
    #[arg(long)]
    pub n_modes: Option<usize>,
    /// Largest lattice wavenumber k r0.
    #[arg(long)]
    pub k_max: Option<f64>,
    /// Healing length ξ/r0.
    #[arg(long)]
    pub xi: Option<f64>,
    /// Drift speed v_R/c_s.
    #[arg(long, allow_hyphen_values = true)]
    pub v_r: Option<f64>,
    /// Largest admitted frequency mismatch.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Time step in r0/c_s.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Final time [default: five e-foldings of the selected triad].
    #[arg(long)]
    pub t_final: Option<f64>,
    /// Steps between output rows.
    #[arg(long)]
    pub output_every: Option<usize>,
    /// Pump amplitude.
    #[arg(long)]
    pub amplitude: Option<f64>,
    /// Row of triads.csv to integrate.
    #[arg(long)]
    pub index: Option<usize>,
}

#[derive(Debug, Serialize)]
struct TriadReport<'a> {
    config: &'a TriadConfig,
    triads_found: usize,
    index: usize,
    triad: Triad,
    pump: Option<usize>,
    growth_rate: Option<f64>,
    t_final: f64,
}

const HEADER: [&str; 19] = [
    "index",
    "i1",
    "j1",
    "i2",
    "j2",
    "i3",
    "j3",
    "k1_r",
    "k1_theta",
    "k2_r",
    "k2_theta",
    "k3_r",
    "k3_theta",
    "mismatch",
    "c1",
    "c2",
    "c3",
    "collinear",
    "growth_rate",
];

pub fn run(args: &TriadArgs) -> CliResult<()> {
    let cfg: TriadConfig = load(
        args.common.config.as_deref(),
        vec![
            ("n_modes", opt(args.n_modes)),
            ("k_max", opt(args.k_max)),
            ("xi_over_r0", opt(args.xi)),
            ("v_r_over_cs", opt(args.v_r)),
            ("tol", opt(args.tol)),
            ("dt", opt(args.dt)),
            ("t_final", opt(args.t_final)),
            ("output_every", opt(args.output_every)),
            ("amplitude", opt(args.amplitude)),
            ("index", opt(args.index)),
        ],
    )?;
    let params = ModelParams::new(cfg.v_r_over_cs, cfg.xi_over_r0)?;
    let modes = build_mode_grid(cfg.n_modes, cfg.k_max)?.retained();
    let triads = find_resonant_triads(&modes, &params, TriadSearch::new(cfg.tol))?;
    let channels: Vec<_> = triads
        .iter()
        .map(|t| decay_channel(t, &params, cfg.amplitude))
        .collect();

    let rows = triads
        .iter()
        .zip(&channels)
        .enumerate()
        .map(|(n, (t, ch))| {
            let c = triad_couplings(t, &params);
            let mut row: Vec<Cell> = vec![Cell::Int(n as i64)];
            for (i, j) in t.lattice {
                row.push(i.into());
                row.push(j.into());
            }
            row.extend(reals([
                t.k1.k_r,
                t.k1.k_theta,
                t.k2.k_r,
                t.k2.k_theta,
                t.k3.k_r,
                t.k3.k_theta,
                t.mismatch,
                c.c1,
                c.c2,
                c.c3,
            ]));
            row.push(Cell::Int(t.is_collinear().into()));
            row.push(Cell::Real(ch.map_or(0.0, |c| c.growth_rate)));
            row
        });
    ensure_dir(&args.common.out)?;
    write_csv(&args.common.out.join("triads.csv"), &HEADER, rows)?;

    let index = match cfg.index {
        Some(i) if i < triads.len() => i,
        Some(i) => {
            return Err(CliError::Usage(format!(
                "index {i} out of range: {} triads found",
                triads.len()
            )))
        }
        None => channels.iter().position(Option::is_some).ok_or_else(|| {
            CliError::Usage(format!(
                "no unstable triad within tol {}; pass --index",
                cfg.tol
            ))
        })?,
    };
    let triad = triads[index];
    let channel = channels[index];
    // Pump at full amplitude, one daughter seeded at 1e-3 of it. Without an
    // unstable channel the largest-|ω| member is pumped.
    let pump = channel.map_or(2, |c| c.pump);
    let mut init = [Complex64::new(0.0, 0.0); 3];
    init[pump] = Complex64::new(cfg.amplitude, 0.0);
    init[(pump + 1) % 3] = Complex64::new(1e-3 * cfg.amplitude, 0.0);
    let t_final = match (cfg.t_final, channel) {
        (Some(t), _) => t,
        (None, Some(c)) => 5.0 / c.growth_rate,
        (None, None) => 100.0,
    };
    if cfg.output_every == 0 {
        return Err(CliError::Usage("output_every must be >= 1".into()));
    }
    let traj = integrate_triad(&triad, init, &params, cfg.dt, t_final, cfg.output_every)?;
    write_csv(
        &args.common.out.join("triad_evolution.csv"),
        &["t", "re1", "im1", "re2", "im2", "re3", "im3", "energy"],
        traj.times
            .iter()
            .zip(&traj.amplitudes)
            .zip(&traj.energy)
            .map(|((t, a), e)| {
                reals([*t, a[0].re, a[0].im, a[1].re, a[1].im, a[2].re, a[2].im, *e])
            }),
    )?;
    write_json(
        &args.common.out.join("triad.json"),
        &TriadReport {
            config: &cfg,
            triads_found: triads.len(),
            index,
            triad,
            pump: channel.map(|c| c.pump + 1),
            growth_rate: channel.map(|c| c.growth_rate),
            t_final,
        },
    )?;
    Ok(())
}
