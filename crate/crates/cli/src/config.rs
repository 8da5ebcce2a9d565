//! Config-file ingestion. A JSON object is read from `--config` (if any),
//! command-line flags are laid over it key by key, and the result is
//! deserialized into the target schema, which rejects unknown keys.
//!
//! Precedence: flag > config file > schema default.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub type Overrides = Vec<(&'static str, Option<Value>)>;

pub fn opt<T: Into<Value>>(v: Option<T>) -> Option<Value> {
    v.map(Into::into)
}

pub fn load<T: DeserializeOwned>(path: Option<&Path>, overrides: Overrides) -> CliResult<T> {
    let source = path.map_or_else(|| "<flags>".into(), Path::to_path_buf);
    let bad = |message: String| CliError::Config {
        path: source.clone(),
        message,
    };
    let mut map = match path {
        None => Map::new(),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::Config {
                path: p.to_path_buf(),
                message: e.to_string(),
            })?;
            match serde_json::from_str::<Value>(&text).map_err(|e| bad(e.to_string()))? {
                Value::Object(m) => m,
                _ => return Err(bad("top level must be a JSON object".into())),
            }
        }
    };
    for (key, value) in overrides {
        if let Some(v) = value {
            map.insert(key.to_string(), v);
        }
    }
    serde_json::from_value(Value::Object(map)).map_err(|e| bad(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    SingleMode,
    RandomSpectrum,
    Triad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvolutionKind {
    Auto,
    Direct,
    Transform,
}

impl From<ConvolutionKind> for rossby_core::spectral::Convolution {
    fn from(c: ConvolutionKind) -> Self {
        match c {
            ConvolutionKind::Auto => Self::Auto,
            ConvolutionKind::Direct => Self::Direct,
            ConvolutionKind::Transform => Self::Transform,
        }
    }
}

/// Spectral run configuration (wave units).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub n_modes: usize,
    pub k_max: f64,
    pub xi_over_r0: f64,
    pub v_r_over_cs: f64,
    pub dt: f64,
    pub t_final: f64,
    pub seed: u64,
    pub init: InitKind,
    pub output_every: usize,
    /// Peak |φ_k| of the initial state.
    pub amplitude: f64,
    /// Spectral peak of `random_spectrum`.
    pub k_peak: f64,
    /// Lattice index excited by `single_mode`.
    pub mode: [i32; 2],
    /// Resonance tolerance used by `triad` initialization.
    pub triad_tol: f64,
    pub convolution: ConvolutionKind,
    /// Also write per-mode spectrum snapshots.
    pub spectrum: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_modes: 16,
            k_max: 4.0,
            xi_over_r0: 0.0,
            v_r_over_cs: 0.1,
            dt: 1e-3,
            t_final: 10.0,
            seed: 42,
            init: InitKind::RandomSpectrum,
            output_every: 100,
            amplitude: 0.05,
            k_peak: 1.5,
            mode: [0, 1],
            triad_tol: 1e-3,
            convolution: ConvolutionKind::Auto,
            spectrum: false,
        }
    }
}

/// Triad search and three-mode run configuration (wave units).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TriadConfig {
    pub n_modes: usize,
    pub k_max: f64,
    pub xi_over_r0: f64,
    pub v_r_over_cs: f64,
    pub tol: f64,
    pub dt: f64,
    /// End time; defaults to five e-foldings of the selected channel.
    pub t_final: Option<f64>,
    pub output_every: usize,
    /// Pump modulus; the daughter seed is 1e-3 of this.
    pub amplitude: f64,
    /// Position in the triad table to integrate; defaults to the first
    /// triad with an unstable decay channel.
    pub index: Option<usize>,
}

impl Default for TriadConfig {
    fn default() -> Self {
        Self {
            n_modes: 16,
            k_max: 4.0,
            xi_over_r0: 0.0,
            v_r_over_cs: 0.1,
            tol: 1e-3,
            dt: 1e-2,
            t_final: None,
            output_every: 10,
            amplitude: 0.05,
            index: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rossby_core::params::ParamFile;

    fn write(text: &str) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        fs::write(f.path(), text).unwrap();
        f
    }

    #[test]
    fn flags_override_file() {
        let f = write(r#"{"beta": 1.6, "omega_ratio": 2.4, "mu_hbar_omega": 0.2}"#);
        let p: ParamFile = load(Some(f.path()), vec![("beta", opt(Some(2.0)))]).unwrap();
        assert_eq!(p.beta, Some(2.0));
        assert_eq!(p.omega_ratio, Some(2.4));
    }

    #[test]
    fn unknown_key_is_named() {
        let f = write(r#"{"n_modes": 16, "bogus": 1}"#);
        let err = load::<RunConfig>(Some(f.path()), vec![]).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn defaults_fill_missing_keys() {
        let f = write(r#"{"init": "single_mode", "mode": [1, 2]}"#);
        let c: RunConfig = load(Some(f.path()), vec![]).unwrap();
        assert_eq!(c.init, InitKind::SingleMode);
        assert_eq!(c.mode, [1, 2]);
        assert_eq!(c.seed, 42);
    }

    #[test]
    fn non_object_rejected() {
        let f = write("[1, 2]");
        assert!(load::<RunConfig>(Some(f.path()), vec![]).is_err());
    }
}
