//! Run configuration, read from TOML or assembled from command-line flags.
//!
//! ```toml
//! datasets = ["data/synthetic.csv"]
//! seed = 7
//! tie_break = "canonical"
//!
//! [[models]]
//! name = "ubcf"
//! top_k = 20
//!
//! [[models]]
//! name = "table:tables/phm.json"
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::default_noise_grid;
use crate::error::{Error, Result};
use crate::models::{ModelFactory, ModelKind};
use crate::recommenders::{CfOptions, TieBreak};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<TieBreak>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_k: Option<usize>,
}

impl ModelEntry {
    pub fn named(name: impl Into<String>) -> Self {
        ModelEntry {
            name: name.into(),
            tie_break: None,
            top_k: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub datasets: Vec<PathBuf>,
    #[serde(default)]
    pub models: Vec<ModelEntry>,
    pub seed: u64,
    #[serde(default = "default_noise_grid")]
    pub noise_grid: Vec<f64>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default)]
    pub tie_break: TieBreak,
    #[serde(default)]
    pub top_k: Option<usize>,
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    pub fn new(seed: u64) -> Self {
        RunConfig {
            datasets: Vec::new(),
            models: Vec::new(),
            seed,
            noise_grid: default_noise_grid(),
            out: default_out(),
            tie_break: TieBreak::default(),
            top_k: None,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: RunConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.noise_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Config(format!("noise level {p} outside [0, 1]")));
        }
        if self.top_k == Some(0) || self.models.iter().any(|m| m.top_k == Some(0)) {
            return Err(Error::Config("top_k must be positive".into()));
        }
        for m in &self.models {
            m.name.parse::<ModelKind>().map_err(Error::Config)?;
        }
        Ok(())
    }

    pub fn options_for(&self, entry: &ModelEntry) -> CfOptions {
        CfOptions {
            tie_break: entry.tie_break.unwrap_or(self.tie_break),
            top_k: entry.top_k.or(self.top_k),
        }
    }

    /// One factory per model entry, prediction tables loaded and validated.
    pub fn factories(&self) -> Result<Vec<ModelFactory>> {
        self.models
            .iter()
            .map(|m| {
                let kind: ModelKind = m.name.parse().map_err(Error::Config)?;
                kind.factory(self.options_for(m))
            })
            .collect()
    }
}
