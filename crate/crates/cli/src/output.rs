use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::{CliError, ExperimentConfig};

pub(crate) fn fid(x: f64) -> String {
    format!("{x:.6}")
}

pub(crate) fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{:.6e}", x).parse::<f64>().map(|v| v.to_string()).unwrap_or_default()
    } else {
        String::new()
    }
}

/// Writes `rows` under a header row, preceded by `#` lines recording the seed and effective parameters.
pub(crate) struct Artifacts<'a> {
    config: &'a ExperimentConfig,
    params_json: String,
    pub(crate) files: Vec<PathBuf>,
}

impl<'a> Artifacts<'a> {
    pub(crate) fn new<P: Serialize>(config: &'a ExperimentConfig, params: &P) -> Result<Self, CliError> {
        let params_json = serde_json::to_string(params).map_err(|e| CliError::Encoding(e.to_string()))?;
        Ok(Self { config, params_json, files: Vec::new() })
    }

    fn path(&self, file: &str) -> PathBuf {
        self.config.out.join(file)
    }

    pub(crate) fn csv(&mut self, file: &str, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        let path = self.path(file);
        let mut buf: Vec<u8> = Vec::new();
        writeln!(buf, "# experiment: {}", self.config.experiment).expect("write to memory");
        writeln!(buf, "# seed: {}", self.config.seed).expect("write to memory");
        match self.config.samples {
            Some(n) => writeln!(buf, "# samples: {n}").expect("write to memory"),
            None => writeln!(buf, "# samples: default").expect("write to memory"),
        }
        writeln!(buf, "# params: {}", self.params_json).expect("write to memory");
        {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
            let enc = |e: csv::Error| CliError::Encoding(e.to_string());
            w.write_record(header).map_err(enc)?;
            for row in rows {
                if row.len() != header.len() {
                    return Err(CliError::Encoding(format!("row of {} cells under {} columns", row.len(), header.len())));
                }
                w.write_record(row).map_err(enc)?;
            }
            w.flush().map_err(|e| CliError::io(&path, e))?;
        }
        write_file(&path, &buf)?;
        self.files.push(path);
        Ok(())
    }

    pub(crate) fn summary<R: Serialize>(&mut self, results: &R) -> Result<(), CliError> {
        let path = self.path(&format!("{}.json", self.config.experiment));
        let params: serde_json::Value =
            serde_json::from_str(&self.params_json).map_err(|e| CliError::Encoding(e.to_string()))?;
        let doc = json!({
            "experiment": self.config.experiment,
            "seed": self.config.seed,
            "samples": self.config.samples,
            "params": params,
            "results": results,
        });
        let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Encoding(e.to_string()))?;
        text.push('\n');
        write_file(&path, text.as_bytes())?;
        self.files.push(path);
        Ok(())
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}
