//! Versioned JSON run configuration.
//!
//! Every section is optional and falls back to the calibrated defaults.
//! Unknown keys are rejected, and errors carry the JSON path and position.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arraysim::ArrayModels;
use crate::consts::T_REF;
use crate::error::{Error, Result};
use crate::explorer::SweepGrid;
use crate::magnetics::RetentionSpec;
use crate::techmodel::{default_roadmap, MtjStackGeometry, SramRoadmapEntry};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the default configuration file.
pub const CONFIG_ENV: &str = "SOTMRAM_CONFIG";

/// Retention-statistics settings shared by every target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetentionSettings {
    pub error_rate: f64,
    pub tau_0: f64,
    pub t_op: f64,
    pub t_ref: f64,
}

impl Default for RetentionSettings {
    fn default() -> Self {
        let s = RetentionSpec::llc(1.0);
        Self {
            error_rate: s.error_rate,
            tau_0: s.tau_0,
            t_op: s.t_op,
            t_ref: T_REF,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub models: ArrayModels,
    #[serde(default)]
    pub via_stack: MtjStackGeometry,
    #[serde(default)]
    pub retention: RetentionSettings,
    #[serde(default = "default_roadmap")]
    pub roadmap: Vec<SramRoadmapEntry>,
    /// Grid for the `sweep` subcommand; the reference design space when absent.
    #[serde(default)]
    pub sweep: Option<SweepGrid>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            models: ArrayModels::default(),
            via_stack: MtjStackGeometry::default(),
            retention: RetentionSettings::default(),
            roadmap: default_roadmap(),
            sweep: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            Error::Config {
                path: e.path().to_string(),
                reason: format!("{inner} (line {}, column {})", inner.line(), inner.column()),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config {
                path: "schema_version".into(),
                reason: format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            });
        }
        self.models.validate()?;
        self.via_stack.validate()?;
        for e in &self.roadmap {
            e.validate()?;
        }
        if let Some(g) = &self.sweep {
            g.points()?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_takes_defaults() {
        let c = RunConfig::from_json(r#"{"schema_version": 1}"#).unwrap();
        assert_eq!(c, RunConfig::default());
    }

    #[test]
    fn round_trip() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::from_json(&c.to_json().unwrap()).unwrap(), c);
    }

    #[test]
    fn unknown_key_reports_path() {
        let e = RunConfig::from_json(r#"{"schema_version": 1, "retention": {"tau_0": 1e-9, "bogus": 1}}"#).unwrap_err();
        match e {
            Error::Config { path, reason } => {
                assert_eq!(path, "retention.bogus");
                assert!(reason.contains("line 1"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_version_rejected() {
        assert!(matches!(
            RunConfig::from_json(r#"{"schema_version": 7}"#),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn invalid_model_value_rejected() {
        let mut c = RunConfig::default();
        c.models.read.window = -1.0;
        assert!(RunConfig::from_json(&c.to_json().unwrap()).is_err());
    }
}
