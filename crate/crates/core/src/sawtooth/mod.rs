//! Classical and quantum sawtooth map dynamics and the gate-level circuit of
//! one quantum iteration.

mod circuit;
mod classical;
mod params;
mod quantum;

pub use circuit::{decompose_diagonal, qft_circuit, sawtooth_circuit, Gate, GateList, QuadraticPhase};
pub use classical::{
    classical_ensemble, classical_step, initial_angles, momentum_bin, wrap_angle, wrap_momentum, ClassicalHistogram,
    ClassicalTrajectory,
};
pub use params::{SawtoothParams, MAX_QUBITS};
pub use quantum::{
    apply_iterations, build_free_evolution, build_kick, build_qft, build_sawtooth, iterate_unitary, DiagonalUnitary,
};
