//! Emulation laboratory for the quantum sawtooth map.
//!
//! The crate covers the exact classical and quantum map, its gate-level
//! circuit, a three-tier noise model (coherent, decoherent, incoherent) built
//! from CPTP channel algebra, and the localization diagnostics used to tell
//! localized from diffusive dynamics.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`). The aliases at the
//! crate root fix the scalar to `f64`, which is what the tolerances quoted in
//! the docs assume.

pub mod channels;
pub mod diagnostics;
pub mod emulation;
mod error;
pub mod sawtooth;
mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Complex, Real};

pub type ComplexMatrix = tensor::ComplexMatrix<f64>;
pub type DensityState = tensor::DensityState<f64>;
pub type PauliCoefficients = tensor::PauliCoefficients<f64>;
pub type SawtoothParams = sawtooth::SawtoothParams<f64>;
pub type ClassicalTrajectory = sawtooth::ClassicalTrajectory<f64>;
pub type GateList = sawtooth::GateList<f64>;
pub type Superoperator = channels::Superoperator<f64>;
pub type KrausSet = channels::KrausSet<f64>;
pub type RelaxationRates = channels::RelaxationRates<f64>;
pub type SpinSystem = emulation::SpinSystem<f64>;
pub type RfDistribution = emulation::RfDistribution<f64>;
pub type ExperimentConfig = emulation::ExperimentConfig<f64>;
pub type MomentumDistribution = diagnostics::MomentumDistribution<f64>;
