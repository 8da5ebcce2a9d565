use clap::Args;
use rossby_core::equilibrium::{profile_table, tf_radii, ProfileRow};
use rossby_core::params::ParamFile;
use serde::Serialize;

use super::{Common, TrapFlags};
use crate::config::load;
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, write_csv, write_json, Cell};

/// Thomas-Fermi radii and radial density profile.
#[derive(Debug, Args)]
pub struct EquilibriumArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub trap: TrapFlags,
    /// Radial samples in the profile.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    /// Outer edge of the profile grid in a_ho [default: 1.1 R+].
    #[arg(long)]
    pub r_max: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Radii {
    omega_ratio: f64,
    beta: f64,
    mu: f64,
    annulus: bool,
    r_plus: f64,
    r_minus: Option<f64>,
    r_plus_sq: f64,
    r_minus_sq: f64,
    peak_radius: f64,
    peak_density: f64,
}

pub fn run(args: &EquilibriumArgs) -> CliResult<()> {
    let file: ParamFile = load(args.common.config.as_deref(), args.trap.overrides())?;
    let trap = file.trap()?;
    let eq = tf_radii(trap.mu, trap.omega_ratio, trap.beta)?;
    let r_max = args.r_max.unwrap_or(1.1 * eq.r_plus());
    if args.points < 2 || !(r_max > 0.0 && r_max.is_finite()) {
        return Err(CliError::Usage(
            "need --points >= 2 and a positive --r-max".into(),
        ));
    }
    let radii: Vec<f64> = (0..args.points)
        .map(|i| r_max * i as f64 / (args.points - 1) as f64)
        .collect();
    let table = profile_table(&eq, &radii)?;
    let (peak_radius, peak_density) = eq.peak();
    let report = Radii {
        omega_ratio: eq.omega_ratio,
        beta: eq.beta,
        mu: eq.mu,
        annulus: eq.is_annulus(),
        r_plus: eq.r_plus(),
        r_minus: eq.r_minus(),
        r_plus_sq: eq.r_plus_sq,
        r_minus_sq: eq.r_minus_sq,
        peak_radius,
        peak_density,
    };
    ensure_dir(&args.common.out)?;
    write_json(&args.common.out.join("radii.json"), &report)?;
    write_csv(
        &args.common.out.join("profile.csv"),
        &ProfileRow::HEADER,
        table
            .iter()
            .map(|r| r.values().into_iter().map(Cell::Real).collect()),
    )?;
    Ok(())
}
