use thiserror::Error;

/// Errors raised by the model, solvers and diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Rossby radius undefined for zero rotation rate")]
    ZeroRotation,
    #[error("group velocity undefined at k = 0")]
    UndefinedGradient,
    #[error("no Thomas-Fermi equilibrium: negative discriminant {discriminant}")]
    NoEquilibrium { discriminant: f64 },
    #[error("empty cloud: R_+^2 = {r_plus_sq} is not positive")]
    EmptyCloud { r_plus_sq: f64 },
    #[error("log-density gradient singular at r = {r} (outside or on the support boundary)")]
    SingularGradient { r: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("wrong topology: {0}")]
    WrongTopology(String),
    #[error(
        "root bracketing failed: wanted root #{wanted}, found {found} sign changes \
         scanning {samples} samples of kappa in (0, {kappa_max}]"
    )]
    RootBracketing {
        wanted: usize,
        found: usize,
        samples: usize,
        kappa_max: f64,
    },
    #[error("grid too coarse: {got} points along {axis}, need at least {min}")]
    Resolution {
        axis: &'static str,
        got: usize,
        min: usize,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("corrupted state: non-finite amplitude at mode {mode}")]
    CorruptedState { mode: usize },
    #[error("step size too large: dt * max|omega| = {product} (limit {limit})")]
    StepSize { product: f64, limit: f64 },
    #[error("integration diverged at step {step}")]
    Divergence { step: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RootBracketing { .. }
                | Error::CorruptedState { .. }
                | Error::Divergence { .. }
                | Error::NoEquilibrium { .. }
                | Error::EmptyCloud { .. }
                | Error::SingularGradient { .. }
        )
    }
}
