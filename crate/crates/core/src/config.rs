use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ENV_TOL_RANK: &str = "SLOCCKIT_TOL_RANK";
pub const ENV_TOL_CLUSTER: &str = "SLOCCKIT_TOL_CLUSTER";

pub const DEFAULT_TOL_RANK: f64 = 1e-8;
pub const DEFAULT_TOL_CLUSTER: f64 = 1e-7;
pub const DEFAULT_CONDITION_CAP: f64 = 100.0;

/// Largest `Φ` for which exact arithmetic is attempted (four or eight qubits).
pub const EXACT_MAX_PHI_DIMENSION: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExactMode {
    /// Exact ranks whenever the amplitudes are Gaussian rational.
    #[default]
    Auto,
    ForceFloat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{name} must be a positive finite number, got {value}")]
    BadTolerance { name: &'static str, value: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub tol_rank: f64,
    pub tol_cluster: f64,
    pub exact_mode: ExactMode,
    pub output: OutputFormat,
    pub seed: u64,
    pub condition_cap: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tol_rank: DEFAULT_TOL_RANK,
            tol_cluster: DEFAULT_TOL_CLUSTER,
            exact_mode: ExactMode::Auto,
            output: OutputFormat::Text,
            seed: 0,
            condition_cap: DEFAULT_CONDITION_CAP,
        }
    }
}

fn parse_tolerance(name: &'static str, raw: &str) -> Result<f64, ConfigError> {
    match raw.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(ConfigError::BadTolerance { name, value: raw.to_string() }),
    }
}

impl RunConfig {
    /// Defaults overridden by `SLOCCKIT_TOL_RANK` / `SLOCCKIT_TOL_CLUSTER`.
    pub fn from_env() -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Ok(v) = std::env::var(ENV_TOL_RANK) {
            cfg.tol_rank = parse_tolerance(ENV_TOL_RANK, &v)?;
        }
        if let Ok(v) = std::env::var(ENV_TOL_CLUSTER) {
            cfg.tol_cluster = parse_tolerance(ENV_TOL_CLUSTER, &v)?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        parse_tolerance("tol_rank", &self.tol_rank.to_string())?;
        parse_tolerance("tol_cluster", &self.tol_cluster.to_string())?;
        Ok(())
    }

    pub fn force_float(mut self) -> Self {
        self.exact_mode = ExactMode::ForceFloat;
        self
    }
}
