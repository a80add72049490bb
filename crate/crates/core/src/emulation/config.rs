use serde::{Deserialize, Serialize};

use crate::channels::RelaxationRates;
use crate::emulation::{RfDistribution, Species, SpinSystem};
use crate::sawtooth::SawtoothParams;
use crate::scalar::Real;
use crate::{Error, Result};

/// Gate durations in seconds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateDurations<T> {
    pub qft: T,
    pub inverse_qft: T,
    pub free_evolution: T,
    pub kick: T,
    pub preparation: T,
}

impl<T: Real> Default for GateDurations<T> {
    /// The pulse lengths of the three-spin experiment: 6, 6, 50, 20 and 50 ms.
    fn default() -> Self {
        Self {
            qft: T::lit(6e-3),
            inverse_qft: T::lit(6e-3),
            free_evolution: T::lit(50e-3),
            kick: T::lit(20e-3),
            preparation: T::lit(50e-3),
        }
    }
}

impl<T: Real> GateDurations<T> {
    pub fn iteration(&self) -> T {
        self.qft + self.kick + self.inverse_qft + self.free_evolution
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("qft duration", self.qft),
            ("inverse qft duration", self.inverse_qft),
            ("free evolution duration", self.free_evolution),
            ("kick duration", self.kick),
            ("preparation duration", self.preparation),
        ] {
            if !v.is_finite() || v < T::zero() {
                return Err(Error::OutOfRange {
                    name,
                    value: v.as_f64(),
                    allowed: ">= 0",
                });
            }
        }
        Ok(())
    }
}

/// Where relaxation acts within one iteration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelaxationMode {
    /// After every gate, for that gate's duration.
    #[default]
    PerGate,
    /// Once after the whole iteration, for the summed duration.
    PerIteration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoiseToggles {
    pub coherent: bool,
    pub decoherent: bool,
    pub incoherent: bool,
}

impl NoiseToggles {
    pub const NONE: Self = Self {
        coherent: false,
        decoherent: false,
        incoherent: false,
    };
    pub const ALL: Self = Self {
        coherent: true,
        decoherent: true,
        incoherent: true,
    };
}

impl Default for NoiseToggles {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoherentSettings<T> {
    /// Free evolution under the internal Hamiltonian appended to each gate, in seconds.
    pub error_time: T,
    pub spin: SpinSystem<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct ExperimentConfig<T> {
    pub params: SawtoothParams<T>,
    pub durations: GateDurations<T>,
    pub relaxation: RelaxationRates<T>,
    pub relaxation_mode: RelaxationMode,
    pub rf: RfDistribution<T>,
    pub coherent: CoherentSettings<T>,
    pub noise: NoiseToggles,
    /// Pseudopure polarization `ε ∈ (0, 1]`.
    pub polarization: T,
    pub initial_momentum: i64,
    /// Omit the last free evolution (and its relaxation) before readout.
    pub drop_final_free: bool,
    pub iterations: usize,
    pub seed: u64,
}

impl<T: Real> ExperimentConfig<T> {
    /// Defaults for a register of `params.n_qubits()` spins: rates of 1 s⁻¹,
    /// delta rf distribution, no coherent error time.
    pub fn new(params: SawtoothParams<T>) -> Self {
        let n = params.n_qubits();
        let spin = if n == 3 {
            SpinSystem::three_qubit_acetylene()
        } else {
            SpinSystem::silent(n, Species::Carbon)
        };
        Self {
            params,
            durations: GateDurations::default(),
            relaxation: RelaxationRates::typical(n),
            relaxation_mode: RelaxationMode::default(),
            rf: RfDistribution::delta(),
            coherent: CoherentSettings {
                error_time: T::zero(),
                spin,
            },
            noise: NoiseToggles::default(),
            polarization: T::one(),
            initial_momentum: 0,
            drop_final_free: true,
            iterations: 4,
            seed: 1,
        }
    }

    pub fn with_noise(&self, noise: NoiseToggles) -> Self {
        Self {
            noise,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.params.n_qubits();
        self.durations.validate()?;
        if self.relaxation.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.relaxation.n_qubits(),
            });
        }
        if self.coherent.spin.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.coherent.spin.n_qubits(),
            });
        }
        if !self.coherent.error_time.is_finite() || self.coherent.error_time < T::zero() {
            return Err(Error::OutOfRange {
                name: "coherent error time",
                value: self.coherent.error_time.as_f64(),
                allowed: ">= 0",
            });
        }
        if !(self.polarization > T::zero() && self.polarization <= T::one()) {
            return Err(Error::OutOfRange {
                name: "polarization",
                value: self.polarization.as_f64(),
                allowed: "(0, 1]",
            });
        }
        let half = (self.params.dim() / 2) as i64;
        if !(-half..half).contains(&self.initial_momentum) {
            return Err(Error::OutOfRange {
                name: "initial momentum",
                value: self.initial_momentum as f64,
                allowed: "-N/2 <= m < N/2",
            });
        }
        Ok(())
    }

    /// Per-qubit rf scales for one distribution bin.
    pub fn qubit_scales(&self, bin_scales: &[T]) -> Vec<T> {
        match bin_scales {
            [s] => vec![*s; self.params.n_qubits()],
            [c, h] => self
                .coherent
                .spin
                .species()
                .iter()
                .map(|sp| match sp {
                    Species::Carbon => *c,
                    Species::Hydrogen => *h,
                })
                .collect(),
            _ => unreachable!("distributions have one or two channels"),
        }
    }
}

impl<T: Real> Default for ExperimentConfig<T> {
    fn default() -> Self {
        Self::new(SawtoothParams::reference())
    }
}
