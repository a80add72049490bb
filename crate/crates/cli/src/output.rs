//! CSV tables and manifest sidecars.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{RunConfig, Settings};
use crate::error::{CliError, CliResult};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Comma-separated table with a header row.
#[derive(Debug, Default)]
pub struct Table {
    text: String,
    columns: usize,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        let mut t = Self {
            text: String::new(),
            columns: header.len(),
        };
        t.push_fields(header.iter().map(|h| h.as_ref().to_string()));
        t
    }

    fn push_fields(&mut self, fields: impl Iterator<Item = String>) {
        let row: Vec<String> = fields.collect();
        assert_eq!(row.len(), self.columns, "row width differs from header");
        let _ = writeln!(self.text, "{}", row.join(","));
    }

    /// Appends a row of preformatted fields.
    pub fn row(&mut self, fields: Vec<String>) {
        self.push_fields(fields.into_iter());
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

pub fn momentum_headers(dim: usize) -> Vec<String> {
    let half = (dim / 2) as i64;
    (-half..half).map(|m| format!("w_{m}")).collect()
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Everything needed to reproduce a run; written next to its outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub scenario: String,
    pub tool_version: String,
    pub seed: u64,
    pub mode: Option<String>,
    pub outputs: Vec<String>,
    pub config: RunConfig,
}

impl RunManifest {
    pub fn new(scenario: &str, mode: Option<&str>, settings: &Settings, outputs: &[PathBuf]) -> Self {
        Self {
            scenario: scenario.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: settings.experiment.seed,
            mode: mode.map(str::to_string),
            outputs: outputs
                .iter()
                .map(|p| p.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default())
                .collect(),
            config: RunConfig::from_settings(settings),
        }
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let text = toml::to_string(self).map_err(|e| CliError::Config(format!("manifest: {e}")))?;
        write_file(path, &text)
    }
}
