//! TOML run configuration.
//!
//! Every field is optional; anything left out takes the reference value of
//! the three-spin experiment. A run manifest is also accepted, in which case
//! its `[config]` table is used.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use sawtooth_core::channels::RelaxationRates;
use sawtooth_core::diagnostics::{DistanceMetric, FwhmMethod};
use sawtooth_core::emulation::{
    CouplingForm, ExperimentConfig, RelaxationMode, RfBin, RfDistribution, Species, SpinSystem,
};
use sawtooth_core::sawtooth::SawtoothParams;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub map: MapSection,
    #[serde(default)]
    pub durations: DurationsSection,
    #[serde(default)]
    pub relaxation: RelaxationSection,
    #[serde(default)]
    pub rf: RfSection,
    #[serde(default)]
    pub coherent: CoherentSection,
    #[serde(default)]
    pub noise: NoiseSection,
    #[serde(default)]
    pub classical: ClassicalSection,
    #[serde(default)]
    pub analysis: AnalysisSection,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    #[serde(rename = "K")]
    pub k: Option<f64>,
    #[serde(rename = "L")]
    pub l: Option<u32>,
    pub qubits: Option<usize>,
}

/// Seconds.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DurationsSection {
    pub qft: Option<f64>,
    pub inverse_qft: Option<f64>,
    pub free_evolution: Option<f64>,
    pub kick: Option<f64>,
    pub preparation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerQubit {
    Uniform(f64),
    List(Vec<f64>),
}

impl PerQubit {
    fn expand(&self, n: usize, name: &str) -> CliResult<Vec<f64>> {
        match self {
            PerQubit::Uniform(v) => Ok(vec![*v; n]),
            PerQubit::List(v) if v.len() == n => Ok(v.clone()),
            PerQubit::List(v) => Err(CliError::Config(format!(
                "relaxation.{name} lists {} rates for {n} qubits",
                v.len()
            ))),
        }
    }
}

/// Rates in s⁻¹, one value for all qubits or one per bit position.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelaxationSection {
    pub r1: Option<PerQubit>,
    pub r2: Option<PerQubit>,
    pub mode: Option<RelaxationMode>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RfPreset {
    Delta,
    Synthetic,
}

/// One of `preset`, `file`, or inline `scales`/`probabilities`
/// (plus `scales_h` for a joint table).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RfSection {
    pub preset: Option<RfPreset>,
    pub file: Option<PathBuf>,
    pub scales: Option<Vec<f64>>,
    pub scales_h: Option<Vec<f64>>,
    pub probabilities: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoherentSection {
    /// Seconds of internal-Hamiltonian evolution after each gate.
    pub error_time: Option<f64>,
    pub coupling: Option<CouplingForm>,
    /// By bit position.
    pub species: Option<Vec<Species>>,
    /// Hz, by bit position.
    pub offsets: Option<Vec<f64>>,
    /// Hz, symmetric with zero diagonal.
    pub couplings: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    pub coherent: Option<bool>,
    pub decoherent: Option<bool>,
    pub incoherent: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalSection {
    pub trajectories: Option<usize>,
    pub iterations: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    pub iterations: Option<usize>,
    pub band_width: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub iterations: Option<usize>,
    pub seed: Option<u64>,
    pub polarization: Option<f64>,
    pub initial_momentum: Option<i64>,
    pub drop_final_free: Option<bool>,
    pub metric: Option<DistanceMetric>,
    pub fwhm: Option<FwhmMethod>,
}

pub const DEFAULT_TRAJECTORIES: usize = 20_000;
pub const DEFAULT_CLASSICAL_ITERATIONS: usize = 40;
pub const DEFAULT_ANALYSIS_ITERATIONS: usize = 2;
pub const DEFAULT_BAND_WIDTH: usize = 1;

/// A fully resolved configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub experiment: ExperimentConfig<f64>,
    pub trajectories: usize,
    pub classical_iterations: usize,
    pub analysis_iterations: usize,
    pub band_width: usize,
    pub metric: DistanceMetric,
    pub fwhm: FwhmMethod,
}

#[derive(Deserialize)]
struct ManifestShell {
    config: RunConfig,
}

impl RunConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let value: toml::Table = toml::from_str(text).map_err(CliError::config)?;
        if value.contains_key("config") && value.contains_key("scenario") {
            let shell: ManifestShell = toml::from_str(text).map_err(CliError::config)?;
            return Ok(shell.config);
        }
        toml::from_str(text).map_err(CliError::config)
    }

    /// Loads a config file; a relative `rf.file` is taken relative to it.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::parse(&text)?;
        if let Some(f) = &cfg.rf.file {
            if f.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                cfg.rf.file = Some(base.join(f));
            }
        }
        Ok(cfg)
    }

    pub fn resolve(&self) -> CliResult<Settings> {
        let reference = SawtoothParams::<f64>::reference();
        let params = SawtoothParams::new(
            self.map.k.unwrap_or(reference.chaos()),
            self.map.l.unwrap_or(reference.windings()),
            self.map.qubits.unwrap_or(reference.n_qubits()),
        )
        .map_err(CliError::config)?;
        let n = params.n_qubits();
        let mut exp = ExperimentConfig::new(params);

        let d = &self.durations;
        let dur = &mut exp.durations;
        dur.qft = d.qft.unwrap_or(dur.qft);
        dur.inverse_qft = d.inverse_qft.unwrap_or(dur.inverse_qft);
        dur.free_evolution = d.free_evolution.unwrap_or(dur.free_evolution);
        dur.kick = d.kick.unwrap_or(dur.kick);
        dur.preparation = d.preparation.unwrap_or(dur.preparation);

        let r = &self.relaxation;
        let one = PerQubit::Uniform(1.0);
        exp.relaxation = RelaxationRates::new(
            r.r1.as_ref().unwrap_or(&one).expand(n, "r1")?,
            r.r2.as_ref().unwrap_or(&one).expand(n, "r2")?,
        )
        .map_err(CliError::config)?;
        exp.relaxation_mode = r.mode.unwrap_or_default();

        exp.rf = self.rf.resolve()?;

        let c = &self.coherent;
        exp.coherent.error_time = c.error_time.unwrap_or(0.0);
        if c.species.is_some() || c.offsets.is_some() || c.couplings.is_some() {
            let base = &exp.coherent.spin;
            exp.coherent.spin = SpinSystem::new(
                c.species.clone().unwrap_or_else(|| base.species().to_vec()),
                c.offsets.clone().unwrap_or_else(|| base.offsets().to_vec()),
                c.couplings
                    .clone()
                    .unwrap_or_else(|| (0..n).map(|j| (0..n).map(|k| base.coupling(j, k)).collect()).collect()),
                base.form(),
            )
            .map_err(CliError::config)?;
        }
        if let Some(form) = c.coupling {
            exp.coherent.spin = exp.coherent.spin.clone().with_form(form);
        }

        let nz = &self.noise;
        exp.noise.coherent = nz.coherent.unwrap_or(exp.noise.coherent);
        exp.noise.decoherent = nz.decoherent.unwrap_or(exp.noise.decoherent);
        exp.noise.incoherent = nz.incoherent.unwrap_or(exp.noise.incoherent);

        let run = &self.run;
        exp.iterations = run.iterations.unwrap_or(exp.iterations);
        exp.seed = run.seed.unwrap_or(exp.seed);
        exp.polarization = run.polarization.unwrap_or(exp.polarization);
        exp.initial_momentum = run.initial_momentum.unwrap_or(exp.initial_momentum);
        exp.drop_final_free = run.drop_final_free.unwrap_or(exp.drop_final_free);
        exp.validate().map_err(CliError::config)?;

        let settings = Settings {
            experiment: exp,
            trajectories: self.classical.trajectories.unwrap_or(DEFAULT_TRAJECTORIES),
            classical_iterations: self.classical.iterations.unwrap_or(DEFAULT_CLASSICAL_ITERATIONS),
            analysis_iterations: self.analysis.iterations.unwrap_or(DEFAULT_ANALYSIS_ITERATIONS),
            band_width: self.analysis.band_width.unwrap_or(DEFAULT_BAND_WIDTH),
            metric: run.metric.unwrap_or_default(),
            fwhm: run.fwhm.unwrap_or_default(),
        };
        if settings.trajectories == 0 {
            return Err(CliError::Config("classical.trajectories must be at least 1".into()));
        }
        if settings.analysis_iterations == 0 {
            return Err(CliError::Config("analysis.iterations must be at least 1".into()));
        }
        if settings.band_width >= settings.experiment.params.dim() {
            return Err(CliError::Config(format!(
                "analysis.band_width {} must be below N = {}",
                settings.band_width,
                settings.experiment.params.dim()
            )));
        }
        Ok(settings)
    }

    /// The explicit form of resolved settings, as written to manifests.
    pub fn from_settings(s: &Settings) -> Self {
        let e = &s.experiment;
        let n = e.params.n_qubits();
        let spin = &e.coherent.spin;
        let rf = &e.rf;
        let column = |c: usize| rf.bins().iter().map(|b| b.scales[c]).collect::<Vec<_>>();
        Self {
            map: MapSection {
                k: Some(e.params.chaos()),
                l: Some(e.params.windings()),
                qubits: Some(n),
            },
            durations: DurationsSection {
                qft: Some(e.durations.qft),
                inverse_qft: Some(e.durations.inverse_qft),
                free_evolution: Some(e.durations.free_evolution),
                kick: Some(e.durations.kick),
                preparation: Some(e.durations.preparation),
            },
            relaxation: RelaxationSection {
                r1: Some(PerQubit::List(e.relaxation.longitudinal().to_vec())),
                r2: Some(PerQubit::List(e.relaxation.transverse().to_vec())),
                mode: Some(e.relaxation_mode),
            },
            rf: RfSection {
                preset: None,
                file: None,
                scales: Some(column(0)),
                scales_h: rf.is_joint().then(|| column(1)),
                probabilities: Some(rf.bins().iter().map(|b| b.probability).collect()),
            },
            coherent: CoherentSection {
                error_time: Some(e.coherent.error_time),
                coupling: Some(spin.form()),
                species: Some(spin.species().to_vec()),
                offsets: Some(spin.offsets().to_vec()),
                couplings: Some((0..n).map(|j| (0..n).map(|k| spin.coupling(j, k)).collect()).collect()),
            },
            noise: NoiseSection {
                coherent: Some(e.noise.coherent),
                decoherent: Some(e.noise.decoherent),
                incoherent: Some(e.noise.incoherent),
            },
            classical: ClassicalSection {
                trajectories: Some(s.trajectories),
                iterations: Some(s.classical_iterations),
            },
            analysis: AnalysisSection {
                iterations: Some(s.analysis_iterations),
                band_width: Some(s.band_width),
            },
            run: RunSection {
                iterations: Some(e.iterations),
                seed: Some(e.seed),
                polarization: Some(e.polarization),
                initial_momentum: Some(e.initial_momentum),
                drop_final_free: Some(e.drop_final_free),
                metric: Some(s.metric),
                fwhm: Some(s.fwhm),
            },
        }
    }
}

impl RfSection {
    fn resolve(&self) -> CliResult<RfDistribution<f64>> {
        let inline = self.scales.is_some() || self.probabilities.is_some() || self.scales_h.is_some();
        let sources = usize::from(self.preset.is_some()) + usize::from(self.file.is_some()) + usize::from(inline);
        if sources > 1 {
            return Err(CliError::Config(
                "rf: give only one of preset, file, or inline scales/probabilities".into(),
            ));
        }
        if let Some(path) = &self.file {
            return load_rf(path);
        }
        if inline {
            let (Some(s), Some(p)) = (&self.scales, &self.probabilities) else {
                return Err(CliError::Config("rf: inline tables need both scales and probabilities".into()));
            };
            if s.len() != p.len() || self.scales_h.as_ref().is_some_and(|h| h.len() != p.len()) {
                return Err(CliError::Config("rf: inline columns differ in length".into()));
            }
            let bins = (0..p.len())
                .map(|i| RfBin {
                    scales: match &self.scales_h {
                        Some(h) => vec![s[i], h[i]],
                        None => vec![s[i]],
                    },
                    probability: p[i],
                })
                .collect();
            return RfDistribution::new(bins).map_err(CliError::config);
        }
        Ok(match self.preset.unwrap_or(RfPreset::Delta) {
            RfPreset::Delta => RfDistribution::delta(),
            RfPreset::Synthetic => RfDistribution::synthetic_carbon(),
        })
    }
}

/// Reads an rf distribution file; unreadable files are I/O errors, bad
/// contents are configuration errors.
pub fn load_rf(path: &Path) -> CliResult<RfDistribution<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    RfDistribution::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
