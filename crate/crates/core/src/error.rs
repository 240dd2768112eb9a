use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown bitcell configuration `{0}`")]
    UnknownConfig(String),

    #[error("non-physical input: {0}")]
    Domain(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("newton iteration did not converge after {iterations} iterations (worst node `{worst_node}`, residual {residual:.3e} A)")]
    NonConvergence {
        iterations: usize,
        worst_node: String,
        residual: f64,
    },

    #[error("singular nodal matrix")]
    Singular,

    #[error("time step underflow at t = {time:.4e} s (dt = {dt:.3e} s)")]
    StepUnderflow { time: f64, dt: f64 },

    #[error("calibration `{fit}` failed: {reason}")]
    Calibration { fit: &'static str, reason: String },

    #[error("sweep grid too large: {size} points exceeds cap {cap}")]
    GridTooLarge { size: usize, cap: usize },

    #[error("configuration error at `{path}`: {reason}")]
    Config { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Stable machine-readable kind, used by the CLI error document.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::UnknownConfig(_) => "unknown_config",
            Error::Domain(_) => "domain",
            Error::InvalidCircuit(_) => "invalid_circuit",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Singular => "singular",
            Error::StepUnderflow { .. } => "step_underflow",
            Error::Calibration { .. } => "calibration",
            Error::GridTooLarge { .. } => "grid_too_large",
            Error::Config { .. } => "config",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite and > 0, got {value}")))
    }
}
