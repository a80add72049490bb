//! The noisy experiment: spin Hamiltonian, gate-level coherent and rf
//! errors, relaxation interleaved with the gates, and rf-ensemble averaging.

mod config;
mod gates;
mod pipeline;
mod rf;
mod spin;

pub use config::{CoherentSettings, ExperimentConfig, GateDurations, NoiseToggles, RelaxationMode};
pub use gates::{
    average_gate_fidelity, coherent_error_gate, pseudopure_state, scale_gate, scale_gate_per_qubit, state_correlation,
};
pub use pipeline::{
    build_iteration_channel, effective_distribution, ensemble_channel, ensemble_iterated_channel, ensemble_readout_channel, initial_state,
    noisy_gate, preparation_channel, simulate, BinSeries, ErrorStack, Simulation, Stage,
};
pub use rf::{RfBin, RfDistribution};
pub use spin::{internal_hamiltonian, CouplingForm, Species, SpinSystem, HZ_TO_RAD};
