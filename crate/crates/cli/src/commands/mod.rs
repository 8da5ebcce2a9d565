pub mod dispersion;
pub mod equilibrium;
pub mod simulate;
pub mod stationary;
pub mod triad;

use std::path::PathBuf;

use clap::Args;

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct Common {
    /// JSON config file; flags given on the command line take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(short = 'o', long = "out", value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

/// Trap flags for the equilibrium and stationary subcommands.
#[derive(Debug, Args)]
pub struct TrapFlags {
    /// Rotation rate Ω/ω⊥.
    #[arg(long)]
    pub omega_ratio: Option<f64>,
    /// Quartic anharmonicity β.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Chemical potential μ/ħω⊥ (negative gives an annulus).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
}

impl TrapFlags {
    pub fn overrides(&self) -> crate::config::Overrides {
        use crate::config::opt;
        vec![
            ("omega_ratio", opt(self.omega_ratio)),
            ("beta", opt(self.beta)),
            ("mu_hbar_omega", opt(self.mu)),
        ]
    }
}
