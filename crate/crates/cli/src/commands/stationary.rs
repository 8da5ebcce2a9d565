use clap::Args;
use rossby_core::equilibrium::tf_radii;
use rossby_core::params::ParamFile;
use rossby_core::stationary::{
    annulus_determinant, comparison_table, j0, solve_mode, ComparisonRow,
};
use serde::Serialize;

use super::{Common, TrapFlags};
use crate::config::load;
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, write_csv, write_json, Cell};

/// Axisymmetric Bessel-mode structure on the Thomas-Fermi support.
#[derive(Debug, Args)]
pub struct StationaryArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub trap: TrapFlags,
    /// Radial mode number (1 = fundamental).
    #[arg(long, default_value_t = 1)]
    pub mode: usize,
    /// Radial samples from 0 to R+.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
}

#[derive(Debug, Serialize)]
struct Structure {
    topology: &'static str,
    omega_ratio: f64,
    beta: f64,
    mu: f64,
    mode_index: usize,
    kappa: f64,
    kappa_r_plus: f64,
    a_coef: f64,
    b_coef: f64,
    r_inner: f64,
    r_outer: f64,
    kappa_bracket: (f64, f64),
    /// J0(κR+) for a disk, D(κ) for an annulus.
    boundary_residual: f64,
}

pub fn run(args: &StationaryArgs) -> CliResult<()> {
    if args.mode == 0 {
        return Err(CliError::Usage("--mode counts from 1".into()));
    }
    let file: ParamFile = load(args.common.config.as_deref(), args.trap.overrides())?;
    let trap = file.trap()?;
    let eq = tf_radii(trap.mu, trap.omega_ratio, trap.beta)?;
    let s = solve_mode(&eq, args.mode)?;
    let table = comparison_table(&s, &eq, args.points)?;
    let (topology, boundary_residual) = if s.is_disk() {
        ("disk", j0(s.kappa * s.r_outer))
    } else {
        (
            "annulus",
            annulus_determinant(s.kappa, s.r_inner, s.r_outer)?,
        )
    };
    let report = Structure {
        topology,
        omega_ratio: eq.omega_ratio,
        beta: eq.beta,
        mu: eq.mu,
        mode_index: s.mode_index,
        kappa: s.kappa,
        kappa_r_plus: s.kappa * s.r_outer,
        a_coef: s.a_coef,
        b_coef: s.b_coef,
        r_inner: s.r_inner,
        r_outer: s.r_outer,
        kappa_bracket: s.kappa_bracket,
        boundary_residual,
    };
    ensure_dir(&args.common.out)?;
    write_csv(
        &args.common.out.join(format!("stationary_{topology}.csv")),
        &ComparisonRow::HEADER,
        table
            .iter()
            .map(|r| r.values().into_iter().map(Cell::Real).collect()),
    )?;
    write_json(
        &args.common.out.join(format!("structure_{topology}.json")),
        &report,
    )?;
    Ok(())
}
