use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

/// On-disk configuration; every key is optional and command-line flags take precedence.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub samples: Option<usize>,
    #[serde(default)]
    pub params: toml::Table,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub seed: u64,
    pub out: PathBuf,
    /// Monte Carlo sample count; `None` keeps the experiment default.
    pub samples: Option<usize>,
    /// Experiment-specific overrides.
    pub params: toml::Table,
}

impl ExperimentConfig {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self { experiment: experiment.into(), seed: 0, out: PathBuf::from("results"), samples: None, params: toml::Table::new() }
    }

    /// Merges a config file with flag values; flags win.
    pub fn resolve(
        file: FileConfig,
        experiment: Option<String>,
        seed: Option<u64>,
        out: Option<PathBuf>,
        samples: Option<usize>,
    ) -> Result<Self, CliError> {
        let experiment = experiment
            .or(file.experiment)
            .ok_or_else(|| CliError::Usage("no experiment given on the command line or in the config".into()))?;
        let samples = samples.or(file.samples);
        if samples == Some(0) {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        Ok(Self {
            experiment,
            seed: seed.or(file.seed).unwrap_or(0),
            out: out.or(file.out).unwrap_or_else(|| PathBuf::from("results")),
            samples,
            params: file.params,
        })
    }

    pub(crate) fn params<P: DeserializeOwned>(&self) -> Result<P, CliError> {
        toml::Value::Table(self.params.clone())
            .try_into()
            .map_err(|e| CliError::Usage(format!("invalid [params] for {}: {e}", self.experiment)))
    }

    pub(crate) fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}
