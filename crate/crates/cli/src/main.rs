//! `rossby`: command-line front end for rossby-core.
//!
//! Exit status is 0 on success, 1 on a numerical or I/O failure and 2 on a
//! usage or configuration error. Errors go to stderr prefixed `ERROR:`.
//! `ROSSBY_THREADS` caps the worker pool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{dispersion, equilibrium, simulate, stationary, triad};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "rossby",
    version,
    about = "Rossby waves in rapidly rotating condensates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Linear dispersion relation along k_θ for several healing lengths.
    Dispersion(dispersion::DispersionArgs),
    /// Thomas-Fermi radii and density profile.
    Equilibrium(equilibrium::EquilibriumArgs),
    /// Stationary Bessel-mode structure with TF comparison table.
    Stationary(stationary::StationaryArgs),
    /// Spectral nonlinear run with invariant and spectrum output.
    Simulate(simulate::SimulateArgs),
    /// Resonant triad search and three-mode integration.
    Triad(triad::TriadArgs),
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("ROSSBY_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "ROSSBY_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

fn dispatch(command: &Command) -> CliResult<()> {
    configure_threads()?;
    match command {
        Command::Dispersion(a) => dispersion::run(a),
        Command::Equilibrium(a) => equilibrium::run(a),
        Command::Stationary(a) => stationary::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Triad(a) => triad::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand | ErrorKind::MissingSubcommand => {
                eprintln!("{}", e.render());
                return ExitCode::from(2);
            }
            _ => {
                let text = e.render().to_string();
                let text = text.strip_prefix("error: ").unwrap_or(&text);
                eprintln!("ERROR: {}", text.trim_end());
                return ExitCode::from(2);
            }
        },
    };
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ERROR: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
