use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::MomentumDistribution;
use crate::sawtooth::SawtoothParams;
use crate::{Error, Real, Result};

/// Point on the classical torus: `θ ∈ [0, 2π)`, `m ∈ [−N/2, N/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalTrajectory<T> {
    pub theta: T,
    pub momentum: T,
}

/// Wraps `m` into `[−N/2, N/2)`.
pub fn wrap_momentum<T: Real>(m: T, dim: usize) -> T {
    let n = T::from_usize(dim).expect("small dimension");
    let half = n / T::lit(2.0);
    let wrapped = m - n * ((m + half) / n).floor();
    // rounding can land exactly on the open end
    if wrapped >= half {
        wrapped - n
    } else {
        wrapped
    }
}

/// Wraps `θ` into `[0, 2π)`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let tau = T::TAU();
    let wrapped = theta - tau * (theta / tau).floor();
    if wrapped >= tau {
        wrapped - tau
    } else {
        wrapped
    }
}

/// One map step: `m̄ = m + k(θ − π)`, `θ̄ = θ + T·m̄`, then both wrapped.
pub fn classical_step<T: Real>(tr: ClassicalTrajectory<T>, p: &SawtoothParams<T>) -> ClassicalTrajectory<T> {
    let m = tr.momentum + p.kick_strength() * (tr.theta - T::PI());
    let theta = tr.theta + p.period() * m;
    ClassicalTrajectory {
        theta: wrap_angle(theta),
        momentum: wrap_momentum(m, p.dim()),
    }
}

/// Integer momentum bin of a continuous momentum: `[m − 1/2, m + 1/2)`,
/// returned as a computational index.
pub fn momentum_bin<T: Real>(m: T, dim: usize) -> usize {
    let label = (m + T::lit(0.5)).floor().to_i64().expect("finite momentum");
    crate::diagnostics::label_to_index(label, dim)
}

/// Binned momentum counts for every iteration `0..=t_max` of an ensemble.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalHistogram {
    pub dim: usize,
    pub trajectories: usize,
    /// `counts[t][idx]`, idx = m + N/2.
    pub counts: Vec<Vec<u64>>,
}

impl ClassicalHistogram {
    pub fn iterations(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn distribution<T: Real>(&self, t: usize) -> Result<MomentumDistribution<T>> {
        MomentumDistribution::from_counts(&self.counts[t])
    }
}

/// Initial angles drawn from ChaCha8 seeded by `seed`, uniform on `[0, 2π)`.
pub fn initial_angles(n_traj: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_traj).map(|_| rng.gen::<f64>() * std::f64::consts::TAU).collect()
}

/// Evolves `n_traj` trajectories from `m = 0` with seeded uniform angles and
/// bins their momenta after each iteration.
///
/// Initial angles are drawn serially before any evolution, and the reduction
/// only adds integer counts, so `parallel` never changes the result.
pub fn classical_ensemble<T: Real>(
    p: &SawtoothParams<T>,
    n_traj: usize,
    t_max: usize,
    seed: u64,
    parallel: bool,
) -> Result<ClassicalHistogram> {
    if n_traj == 0 {
        return Err(Error::OutOfRange {
            name: "trajectories",
            value: 0.0,
            allowed: ">= 1",
        });
    }
    let dim = p.dim();
    let angles = initial_angles(n_traj, seed);
    let run = |theta0: &f64| -> Vec<usize> {
        let mut tr = ClassicalTrajectory {
            theta: T::from_f64(*theta0).expect("angle fits scalar"),
            momentum: T::zero(),
        };
        let mut bins = Vec::with_capacity(t_max + 1);
        bins.push(momentum_bin(tr.momentum, dim));
        for _ in 0..t_max {
            tr = classical_step(tr, p);
            bins.push(momentum_bin(tr.momentum, dim));
        }
        bins
    };
    let empty = || vec![vec![0u64; dim]; t_max + 1];
    let accumulate = |mut acc: Vec<Vec<u64>>, bins: Vec<usize>| {
        for (t, b) in bins.into_iter().enumerate() {
            acc[t][b] += 1;
        }
        acc
    };
    let merge = |mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>| {
        for (ra, rb) in a.iter_mut().zip(b) {
            for (x, y) in ra.iter_mut().zip(rb) {
                *x += y;
            }
        }
        a
    };
    let counts = if parallel {
        angles
            .par_iter()
            .map(run)
            .fold(empty, accumulate)
            .reduce(empty, merge)
    } else {
        angles.iter().map(run).fold(empty(), accumulate)
    };
    Ok(ClassicalHistogram {
        dim,
        trajectories: n_traj,
        counts,
    })
}
