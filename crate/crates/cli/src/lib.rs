//! Command-line front end for sawtooth map localization experiments.
//!
//! Subcommands write comma-separated series plus a `*.manifest.toml`
//! sidecar holding the fully resolved configuration; passing that manifest
//! back as `--config` reproduces the run.

pub mod commands;
pub mod config;
mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::QuantumMode;
pub use config::{RunConfig, Settings};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "sawtooth", version, about = "Quantum sawtooth map emulation laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical ensemble histograms and second moments.
    Classical(CommonArgs),
    /// Quantum map momentum distributions (ideal, circuit or noisy).
    Quantum {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "ideal")]
        mode: QuantumMode,
        /// Also write per-rf-bin series in noisy mode.
        #[arg(long)]
        per_bin: bool,
    },
    /// Superoperator, Kraus and bandedness report for the five error stacks.
    Analyze(CommonArgs),
    /// Print the derived map parameters.
    Estimate(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// TOML configuration or run manifest.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Iteration count of the selected subcommand.
    #[arg(long)]
    pub iterations: Option<usize>,
    /// rf distribution file (scale,probability or scale_c,scale_h,probability).
    #[arg(long)]
    pub rf_dist: Option<PathBuf>,
    /// Run on one thread.
    #[arg(long)]
    pub serial: bool,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum IterationTarget {
    Classical,
    Quantum,
    Analysis,
}

impl CommonArgs {
    fn settings(&self, target: IterationTarget) -> CliResult<Settings> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(path) = &self.rf_dist {
            cfg.rf = config::RfSection {
                file: Some(path.clone()),
                ..Default::default()
            };
        }
        if let Some(seed) = self.seed {
            cfg.run.seed = Some(seed);
        }
        if let Some(n) = self.iterations {
            match target {
                IterationTarget::Classical => cfg.classical.iterations = Some(n),
                IterationTarget::Quantum => cfg.run.iterations = Some(n),
                IterationTarget::Analysis => cfg.analysis.iterations = Some(n),
            }
        }
        cfg.resolve()
    }
}

/// Runs one command and returns what it wants printed on stdout.
pub fn run(cli: &Cli) -> CliResult<String> {
    let listing = |files: Vec<PathBuf>| {
        files
            .iter()
            .map(|f| format!("wrote {}\n", f.display()))
            .collect::<String>()
    };
    match &cli.command {
        Command::Classical(a) => {
            let s = a.settings(IterationTarget::Classical)?;
            commands::run_classical(&s, !a.serial, &a.out).map(listing)
        }
        Command::Quantum { common, mode, per_bin } => {
            let s = common.settings(IterationTarget::Quantum)?;
            commands::run_quantum(&s, *mode, *per_bin, !common.serial, &common.out).map(listing)
        }
        Command::Analyze(a) => {
            let s = a.settings(IterationTarget::Analysis)?;
            commands::run_analyze(&s, &a.out).map(listing)
        }
        Command::Estimate(a) => {
            let s = a.settings(IterationTarget::Quantum)?;
            Ok(commands::estimate_report(&s))
        }
    }
}
