//! Named experiment runner: TOML configuration in, CSV and JSON artifacts out.

mod config;
mod experiments;
mod output;

use std::path::{Path, PathBuf};

pub use config::{ExperimentConfig, FileConfig};
pub use experiments::{list_experiments, ExperimentInfo};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] ciswap::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("output encoding: {0}")]
    Encoding(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } | CliError::Encoding(_) => 1,
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }
}

/// Files written by one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunArtifacts {
    pub files: Vec<PathBuf>,
}

pub fn run(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let info = list_experiments()
        .into_iter()
        .find(|e| e.name == config.experiment)
        .ok_or_else(|| CliError::Usage(format!("unknown experiment `{}`", config.experiment)))?;
    std::fs::create_dir_all(&config.out).map_err(|e| CliError::io(&config.out, e))?;
    (info.run)(config)
}
