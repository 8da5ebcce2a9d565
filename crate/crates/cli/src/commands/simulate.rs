use clap::Args;
use num_complex::Complex64;
use rossby_core::diagnostics::{energy_enstrophy, zonal_spectrum, Invariants};
use rossby_core::dispersion::ModelParams;
use rossby_core::spectral::{
    build_mode_grid, decay_channel, find_resonant_triads, integrate_with, random_spectrum,
    single_mode, ModeSet, SpectralModel, SpectralState, TriadSearch,
};
use serde::Serialize;

use super::Common;
use crate::config::{load, opt, InitKind, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, reals, write_csv, write_json};

/// Integrate the spectral wave equation from a seeded initial state.
#[derive(Debug, Args)]
pub struct SimulateArgs {
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
    /// Time step in r0/c_s.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Final time in r0/c_s.
    #[arg(long)]
    pub t_final: Option<f64>,
    /// Random seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Initial condition: single_mode, random_spectrum or triad.
    #[arg(long)]
    pub init: Option<String>,
    /// Steps between output rows.
    #[arg(long)]
    pub output_every: Option<usize>,
    /// Peak initial |φ_k|.
    #[arg(long)]
    pub amplitude: Option<f64>,
    /// Convolution: auto, direct or transform.
    #[arg(long)]
    pub convolution: Option<String>,
    /// Write per-mode spectrum snapshots to spectrum.csv.
    #[arg(long)]
    pub spectrum: bool,
}

#[derive(Debug, Serialize)]
struct RunReport<'a> {
    config: &'a RunConfig,
    retained_modes: usize,
    steps: usize,
    final_time: f64,
    initial: Invariants,
    r#final: Invariants,
    energy_drift: f64,
    enstrophy_drift: f64,
    energy_xi_drift: f64,
    max_reality_drift: f64,
    max_amplitude: f64,
}

fn relative(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        (b - a).abs()
    } else {
        ((b - a) / a).abs()
    }
}

fn initial_state(
    cfg: &RunConfig,
    modes: &ModeSet,
    params: &ModelParams,
) -> CliResult<SpectralState> {
    match cfg.init {
        InitKind::SingleMode => Ok(single_mode(
            modes,
            (cfg.mode[0], cfg.mode[1]),
            Complex64::new(cfg.amplitude, 0.0),
        )?),
        InitKind::RandomSpectrum => {
            Ok(random_spectrum(modes, cfg.seed, cfg.amplitude, cfg.k_peak)?)
        }
        InitKind::Triad => {
            let search = TriadSearch {
                tol: cfg.triad_tol,
                require_coupling: true,
            };
            let (triad, channel) = find_resonant_triads(modes, params, search)?
                .into_iter()
                .find_map(|t| decay_channel(&t, params, cfg.amplitude).map(|c| (t, c)))
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "no unstable resonant triad within tol {}",
                        cfg.triad_tol
                    ))
                })?;
            // Pump at full amplitude, one daughter seeded at 1e-3 of it.
            let mut s = SpectralState::zeros(modes.len());
            let seed = (channel.pump + 1) % 3;
            for (m, amp) in [(channel.pump, cfg.amplitude), (seed, 1e-3 * cfg.amplitude)] {
                let n = modes
                    .position(triad.lattice[m])
                    .expect("triad modes come from the grid");
                s.amplitudes[n] = Complex64::new(amp, 0.0);
                s.amplitudes[modes.conj(n)] = Complex64::new(amp, 0.0);
            }
            Ok(s)
        }
    }
}

pub fn run(args: &SimulateArgs) -> CliResult<()> {
    let cfg: RunConfig = load(
        args.common.config.as_deref(),
        vec![
            ("n_modes", opt(args.n_modes)),
            ("k_max", opt(args.k_max)),
            ("xi_over_r0", opt(args.xi)),
            ("v_r_over_cs", opt(args.v_r)),
            ("dt", opt(args.dt)),
            ("t_final", opt(args.t_final)),
            ("seed", opt(args.seed)),
            ("init", opt(args.init.clone())),
            ("output_every", opt(args.output_every)),
            ("amplitude", opt(args.amplitude)),
            ("convolution", opt(args.convolution.clone())),
            ("spectrum", args.spectrum.then_some(true.into())),
        ],
    )?;
    if cfg.output_every == 0 {
        return Err(CliError::Usage("output_every must be >= 1".into()));
    }
    if !(cfg.t_final >= 0.0 && cfg.t_final.is_finite() && cfg.dt > 0.0) {
        return Err(CliError::Usage("need t_final >= 0 and dt > 0".into()));
    }
    let params = ModelParams::new(cfg.v_r_over_cs, cfg.xi_over_r0)?;
    let modes = build_mode_grid(cfg.n_modes, cfg.k_max)?.retained();
    let model = SpectralModel::new(modes.clone(), params, cfg.convolution.into())?;
    let state = initial_state(&cfg, &modes, &params)?;
    let n_steps = (cfg.t_final / cfg.dt).round() as usize;

    let mut series = Vec::new();
    let mut snapshots = Vec::new();
    let mut record = |s: &SpectralState| {
        let inv = energy_enstrophy(&model, s);
        series.push((s.time, inv, s.max_amplitude()));
        if cfg.spectrum {
            for (k, a) in modes.vectors().iter().zip(&s.amplitudes) {
                snapshots.push(reals([s.time, k.k_r, k.k_theta, a.re, a.im]));
            }
        }
    };
    record(&state);
    let report = integrate_with(&model, &state, cfg.dt, n_steps, |step, s| {
        if step % cfg.output_every == 0 || step == n_steps {
            record(s);
        }
    })?;

    let out = &args.common.out;
    ensure_dir(out)?;
    write_csv(
        &out.join("timeseries.csv"),
        &["t", "E", "Z", "max_amp"],
        series
            .iter()
            .map(|(t, inv, m)| reals([*t, inv.energy, inv.enstrophy, *m])),
    )?;
    write_csv(
        &out.join("invariants.csv"),
        &["t", "E", "Z", "E_xi"],
        series
            .iter()
            .map(|(t, inv, _)| reals([*t, inv.energy, inv.enstrophy, inv.energy_xi])),
    )?;
    write_csv(
        &out.join("zonal_spectrum.csv"),
        &["k_theta", "power"],
        zonal_spectrum(&modes, &report.state)
            .into_iter()
            .map(|(k, p)| reals([k, p])),
    )?;
    if cfg.spectrum {
        write_csv(
            &out.join("spectrum.csv"),
            &["t", "k_r", "k_theta", "re", "im"],
            snapshots,
        )?;
    }
    let (initial, last) = (series[0].1, series[series.len() - 1].1);
    write_json(
        &out.join("run.json"),
        &RunReport {
            config: &cfg,
            retained_modes: modes.len(),
            steps: report.steps,
            final_time: report.state.time,
            initial,
            r#final: last,
            energy_drift: relative(initial.energy, last.energy),
            enstrophy_drift: relative(initial.enstrophy, last.enstrophy),
            energy_xi_drift: relative(initial.energy_xi, last.energy_xi),
            max_reality_drift: report.max_reality_drift,
            max_amplitude: report.state.max_amplitude(),
        },
    )?;
    Ok(())
}
