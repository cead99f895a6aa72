//! JSON run configuration. Command-line flags take precedence.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsFile {
    pub r: Option<f64>,
    pub alpha: Option<f64>,
    pub eps: Option<f64>,
    pub m: Option<f64>,
    #[serde(rename = "M")]
    pub big_m: Option<f64>,
    pub function: Option<String>,
    pub regime: Option<String>,
    pub family: Option<String>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    /// Informational; the subcommand on the command line decides.
    pub command: Option<String>,
    #[serde(alias = "suite_id")]
    pub suite: Option<String>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub dims: Option<Vec<usize>>,
    pub params: ParamsFile,
    #[serde(alias = "output_path")]
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// `flag` if given, else the config value.
pub fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}
