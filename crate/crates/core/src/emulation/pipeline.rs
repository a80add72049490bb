//! Noisy iteration channels and their rf ensembles.
//!
//! One iteration applies, in order, the QFT, the kick, the inverse QFT and
//! the free evolution. Each gate may be rf-scaled (incoherent error) and
//! followed by evolution under the internal Hamiltonian (coherent error);
//! relaxation follows each gate for its duration, or the whole iteration
//! once in [`RelaxationMode::PerIteration`].
//!
//! The rf ensemble is frozen disorder: every member keeps its scale for the
//! whole run, so the t-step ensemble is `Σ_s p_s·E_s^t` rather than a power
//! of the one-step mixture.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{compose, mix, relaxation_superop, Superoperator};
use crate::diagnostics::MomentumDistribution;
use crate::emulation::{
    coherent_error_gate, internal_hamiltonian, pseudopure_state, scale_gate_per_qubit, ExperimentConfig, NoiseToggles,
    RelaxationMode, RfBin, RfDistribution,
};
use crate::sawtooth::{build_free_evolution, build_kick, build_qft};
use crate::scalar::Real;
use crate::tensor::{vectorize, ComplexMatrix, DensityState};
use crate::{Complex, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Qft,
    Kick,
    InverseQft,
    FreeEvolution,
}

impl Stage {
    pub const ORDER: [Stage; 4] = [Stage::Qft, Stage::Kick, Stage::InverseQft, Stage::FreeEvolution];

    pub fn duration<T: Real>(self, cfg: &ExperimentConfig<T>) -> T {
        let d = &cfg.durations;
        match self {
            Stage::Qft => d.qft,
            Stage::Kick => d.kick,
            Stage::InverseQft => d.inverse_qft,
            Stage::FreeEvolution => d.free_evolution,
        }
    }

    pub fn ideal_gate<T: Real>(self, cfg: &ExperimentConfig<T>) -> ComplexMatrix<T> {
        let p = &cfg.params;
        match self {
            Stage::Qft => build_qft(p.dim()).expect("power-of-two dimension"),
            Stage::Kick => build_kick(p).to_matrix(),
            Stage::InverseQft => build_qft(p.dim()).expect("power-of-two dimension").adjoint(),
            Stage::FreeEvolution => build_free_evolution(p).to_matrix(),
        }
    }
}

/// The five error stacks compared in channel analyses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorStack {
    None,
    Coherent,
    CoherentDecoherent,
    CoherentIncoherent,
    All,
}

impl ErrorStack {
    pub const ORDER: [ErrorStack; 5] = [
        ErrorStack::None,
        ErrorStack::Coherent,
        ErrorStack::CoherentDecoherent,
        ErrorStack::CoherentIncoherent,
        ErrorStack::All,
    ];

    pub fn toggles(self) -> NoiseToggles {
        let (coherent, decoherent, incoherent) = match self {
            ErrorStack::None => (false, false, false),
            ErrorStack::Coherent => (true, false, false),
            ErrorStack::CoherentDecoherent => (true, true, false),
            ErrorStack::CoherentIncoherent => (true, false, true),
            ErrorStack::All => (true, true, true),
        };
        NoiseToggles {
            coherent,
            decoherent,
            incoherent,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ErrorStack::None => "none",
            ErrorStack::Coherent => "coherent",
            ErrorStack::CoherentDecoherent => "coherent+decoherent",
            ErrorStack::CoherentIncoherent => "coherent+incoherent",
            ErrorStack::All => "all",
        }
    }
}

/// The implemented gate for one stage and one set of per-qubit rf scales.
pub fn noisy_gate<T: Real>(cfg: &ExperimentConfig<T>, stage: Stage, qubit_scales: &[T]) -> Result<ComplexMatrix<T>> {
    let mut u = stage.ideal_gate(cfg);
    if cfg.noise.incoherent {
        u = scale_gate_per_qubit(&u, qubit_scales)?;
    }
    if cfg.noise.coherent && cfg.coherent.error_time > T::zero() {
        let h = internal_hamiltonian(&cfg.coherent.spin);
        u = coherent_error_gate(&u, &h, cfg.coherent.error_time)?;
    }
    Ok(u)
}

fn relaxation<T: Real>(cfg: &ExperimentConfig<T>, tau: T) -> Result<Option<Superoperator<T>>> {
    if !cfg.noise.decoherent || tau == T::zero() {
        return Ok(None);
    }
    relaxation_superop(&cfg.relaxation, tau).map(Some)
}

/// One iteration for a single ensemble member with the given bin scales.
/// With `include_final_free = false` the free evolution and its relaxation
/// are left out.
pub fn build_iteration_channel<T: Real>(
    cfg: &ExperimentConfig<T>,
    bin_scales: &[T],
    include_final_free: bool,
) -> Result<Superoperator<T>> {
    let scales = cfg.qubit_scales(bin_scales);
    let stages = if include_final_free {
        &Stage::ORDER[..]
    } else {
        &Stage::ORDER[..3]
    };
    match cfg.relaxation_mode {
        RelaxationMode::PerGate => {
            let mut s = Superoperator::identity(cfg.params.dim());
            for &stage in stages {
                let g = Superoperator::from_unitary(&noisy_gate(cfg, stage, &scales)?)?;
                s = compose(&g, &s)?;
                if let Some(r) = relaxation(cfg, stage.duration(cfg))? {
                    s = compose(&r, &s)?;
                }
            }
            Ok(s)
        }
        RelaxationMode::PerIteration => {
            let mut u = ComplexMatrix::identity(cfg.params.dim());
            let mut tau = T::zero();
            for &stage in stages {
                u = noisy_gate(cfg, stage, &scales)?.matmul(&u);
                tau += stage.duration(cfg);
            }
            let s = Superoperator::from_unitary(&u)?;
            match relaxation(cfg, tau)? {
                Some(r) => compose(&r, &s),
                None => Ok(s),
            }
        }
    }
}

/// Relaxation during input preparation, identity without decoherence.
pub fn preparation_channel<T: Real>(cfg: &ExperimentConfig<T>) -> Result<Superoperator<T>> {
    Ok(relaxation(cfg, cfg.durations.preparation)?.unwrap_or_else(|| Superoperator::identity(cfg.params.dim())))
}

/// The prepared input: the pseudopure state at `initial_momentum`, relaxed
/// for the preparation time when decoherence is on.
pub fn initial_state<T: Real>(cfg: &ExperimentConfig<T>) -> Result<DensityState<T>> {
    let target = cfg.params.index_of(cfg.initial_momentum);
    let rho = pseudopure_state(cfg.params.n_qubits(), target, cfg.polarization)?;
    preparation_channel(cfg)?.apply(&rho)
}

/// The bins the configuration actually averages over.
pub fn effective_distribution<T: Real>(cfg: &ExperimentConfig<T>) -> RfDistribution<T> {
    if cfg.noise.incoherent {
        cfg.rf.clone()
    } else {
        RfDistribution::delta()
    }
}

/// One-iteration ensemble `Σ_s p_s·E_s`.
pub fn ensemble_channel<T: Real>(cfg: &ExperimentConfig<T>) -> Result<Superoperator<T>> {
    per_bin_mix(cfg, |b| build_iteration_channel(cfg, &b.scales, true))
}

fn per_bin_mix<T: Real>(
    cfg: &ExperimentConfig<T>,
    f: impl Fn(&RfBin<T>) -> Result<Superoperator<T>>,
) -> Result<Superoperator<T>> {
    cfg.validate()?;
    let parts = effective_distribution(cfg)
        .bins()
        .iter()
        .map(|b| Ok((f(b)?, b.probability)))
        .collect::<Result<Vec<_>>>()?;
    mix(&parts)
}

/// The `t`-fold map for the whole ensemble, `Σ_s p_s·E_s^t`.
pub fn ensemble_iterated_channel<T: Real>(cfg: &ExperimentConfig<T>, t: usize) -> Result<Superoperator<T>> {
    per_bin_mix(cfg, |b| Ok(build_iteration_channel(cfg, &b.scales, true)?.power(t)))
}

/// Channel from the prepared input to the readout after `t` iterations:
/// like [`ensemble_iterated_channel`] but the last step omits the final free
/// evolution when `drop_final_free` is set.
pub fn ensemble_readout_channel<T: Real>(cfg: &ExperimentConfig<T>, t: usize) -> Result<Superoperator<T>> {
    if t == 0 || !cfg.drop_final_free {
        return ensemble_iterated_channel(cfg, t);
    }
    per_bin_mix(cfg, |b| {
        let full = build_iteration_channel(cfg, &b.scales, true)?;
        let last = build_iteration_channel(cfg, &b.scales, false)?;
        compose(&last, &full.power(t - 1))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct BinSeries<T> {
    pub bin: RfBin<T>,
    /// `W` after `0..=t` iterations.
    pub series: Vec<MomentumDistribution<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct Simulation<T> {
    pub ensemble: Vec<MomentumDistribution<T>>,
    pub bins: Vec<BinSeries<T>>,
}

fn populations<T: Real>(v: &[Complex<T>], dim: usize) -> Vec<T> {
    (0..dim).map(|i| v[i + i * dim].re).collect()
}

fn bin_series<T: Real>(
    cfg: &ExperimentConfig<T>,
    bin: &RfBin<T>,
    v0: &[Complex<T>],
    iterations: usize,
) -> Result<Vec<Vec<T>>> {
    let dim = cfg.params.dim();
    let full = build_iteration_channel(cfg, &bin.scales, true)?;
    let last = if cfg.drop_final_free {
        build_iteration_channel(cfg, &bin.scales, false)?
    } else {
        full.clone()
    };
    let mut v = v0.to_vec();
    let mut out = Vec::with_capacity(iterations + 1);
    out.push(populations(&v, dim));
    for _ in 0..iterations {
        out.push(populations(&last.apply_vec(&v), dim));
        v = full.apply_vec(&v);
    }
    Ok(out)
}

/// Evolves the prepared input through `iterations` noisy map steps for every
/// rf bin, and averages the per-bin momentum distributions with the bin
/// probabilities. The average is summed in bin order, so `parallel` only
/// changes how the bins are scheduled, not the result.
pub fn simulate<T: Real>(cfg: &ExperimentConfig<T>, iterations: usize, parallel: bool) -> Result<Simulation<T>> {
    cfg.validate()?;
    let dist = effective_distribution(cfg);
    let v0 = vectorize(&initial_state(cfg)?);
    let runs: Vec<Vec<Vec<T>>> = if parallel {
        dist.bins()
            .par_iter()
            .map(|b| bin_series(cfg, b, &v0, iterations))
            .collect::<Result<_>>()?
    } else {
        dist.bins()
            .iter()
            .map(|b| bin_series(cfg, b, &v0, iterations))
            .collect::<Result<_>>()?
    };
    let dim = cfg.params.dim();
    let mut ensemble = Vec::with_capacity(iterations + 1);
    for t in 0..=iterations {
        let mut acc = vec![T::zero(); dim];
        for (b, run) in dist.bins().iter().zip(&runs) {
            for (a, &w) in acc.iter_mut().zip(&run[t]) {
                *a += b.probability * w;
            }
        }
        ensemble.push(MomentumDistribution::new(acc)?);
    }
    let bins = dist
        .bins()
        .iter()
        .zip(runs)
        .map(|(b, run)| {
            Ok(BinSeries {
                bin: b.clone(),
                series: run.into_iter().map(MomentumDistribution::new).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Simulation { ensemble, bins })
}
