use clap::Args;
use rossby_core::dispersion::{dispersion_scan, DispersionRow, ModelParams, WaveVector};
use rossby_core::params::ParamFile;

use super::Common;
use crate::config::{load, opt};
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, write_csv, Cell};

/// Scan ω(k) along k_θ at fixed k_r, one family per healing length.
#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub common: Common,
    /// Drift speed v_R/c_s.
    #[arg(long, allow_hyphen_values = true)]
    pub v_r: Option<f64>,
    /// Comma-separated healing lengths ξ/r0 [default: 0,0.7,1.3].
    #[arg(long, value_delimiter = ',')]
    pub xi: Option<Vec<f64>>,
    /// Largest k_θ r0.
    #[arg(long, default_value_t = 5.0)]
    pub k_max: f64,
    /// Fixed radial wavenumber k_r r0.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k_r: f64,
    /// Samples per family.
    #[arg(long, default_value_t = 501)]
    pub points: usize,
}

pub fn run(args: &DispersionArgs) -> CliResult<()> {
    let file: ParamFile = load(
        args.common.config.as_deref(),
        vec![("v_r_over_cs", opt(args.v_r))],
    )?;
    let v_r = file.v_r_over_cs.unwrap_or(0.1);
    let xis = match (&args.xi, file.xi_over_r0) {
        (Some(list), _) => list.clone(),
        (None, Some(xi)) => vec![xi],
        (None, None) => vec![0.0, 0.7, 1.3],
    };
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if !(args.k_max > 0.0 && args.k_max.is_finite()) {
        return Err(CliError::Usage(
            "--k-max must be finite and positive".into(),
        ));
    }
    let ks: Vec<WaveVector> = (0..args.points)
        .map(|i| WaveVector::new(args.k_r, args.k_max * i as f64 / (args.points - 1) as f64))
        .collect();
    let mut rows = Vec::with_capacity(xis.len() * ks.len());
    for &xi in &xis {
        let params = ModelParams::new(v_r, xi)?;
        for row in dispersion_scan(&ks, &params)? {
            let mut cells = vec![Cell::Real(xi)];
            cells.extend(row.values().into_iter().map(Cell::Real));
            rows.push(cells);
        }
    }
    ensure_dir(&args.common.out)?;
    let mut header = vec!["xi"];
    header.extend(DispersionRow::HEADER);
    write_csv(&args.common.out.join("dispersion.csv"), &header, rows)?;
    Ok(())
}
