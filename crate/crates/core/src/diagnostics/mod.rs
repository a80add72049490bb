//! Localization observables computed from states and momentum distributions.
//!
//! Distances between momentum labels are measured on the momentum torus
//! (minimal image) unless [`DistanceMetric::Absolute`] is requested; plain
//! `|m|` differs from the torus distance for broad distributions.

use serde::{Deserialize, Serialize};

use crate::sawtooth::SawtoothParams;
use crate::tensor::{hermitian_eigen, DensityState};
use crate::{Error, Real, Result};

/// Populations `W_m` for `m ∈ [−N/2, N/2)`, stored at index `m + N/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentumDistribution<T> {
    values: Vec<T>,
}

impl<T: Real> MomentumDistribution<T> {
    /// Validates `Σ W = 1 ± 1e−8` and `W ≥ −1e−10`; small negatives are clipped to 0.
    pub fn new(values: Vec<T>) -> Result<Self> {
        let n = values.len();
        if n < 2 || n % 2 != 0 {
            return Err(Error::OutOfRange {
                name: "distribution length",
                value: n as f64,
                allowed: "even and at least 2",
            });
        }
        if values.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite("population"));
        }
        if let Some(&w) = values.iter().find(|&&w| w < -T::tolerance(1e-10)) {
            return Err(Error::OutOfRange {
                name: "population",
                value: w.as_f64(),
                allowed: ">= -1e-10",
            });
        }
        let sum: T = values.iter().copied().sum();
        if (sum - T::one()).abs() > T::tolerance(1e-8) {
            return Err(Error::ProbabilitySum { sum: sum.as_f64() });
        }
        Ok(Self {
            values: values.into_iter().map(|w| w.max(T::zero())).collect(),
        })
    }

    /// Histogram of counts normalized by their total.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::ProbabilitySum { sum: 0.0 });
        }
        let denom = T::from_u64(total).expect("count fits scalar");
        Self::new(
            counts
                .iter()
                .map(|&c| T::from_u64(c).expect("count fits scalar") / denom)
                .collect(),
        )
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        let w = T::one() / T::from_usize(dim).expect("small dimension");
        Self::new(vec![w; dim])
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `W_m`; `m` is taken modulo `N` onto `[−N/2, N/2)`.
    pub fn get(&self, m: i64) -> T {
        self.values[label_to_index(m, self.dim())]
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> {
        let half = (self.dim() / 2) as i64;
        -half..half
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.labels().zip(self.values.iter().copied())
    }

    pub fn total(&self) -> T {
        self.values.iter().copied().sum()
    }
}

pub(crate) fn label_to_index(m: i64, dim: usize) -> usize {
    let n = dim as i64;
    (m + n / 2).rem_euclid(n) as usize
}

/// `W_m = Re ρ[m + N/2, m + N/2]`.
pub fn momentum_distribution<T: Real>(rho: &DensityState<T>) -> Result<MomentumDistribution<T>> {
    let pops = rho.populations();
    let sum: T = pops.iter().copied().sum();
    if (sum - T::one()).abs() > T::tolerance(1e-6) {
        return Err(Error::InvalidTrace { trace: sum.as_f64() });
    }
    MomentumDistribution::new(pops)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMetric {
    /// Minimal signed distance on the momentum torus.
    #[default]
    Torus,
    /// Plain `|m − m0|` over the labels `[−N/2, N/2)`.
    Absolute,
}

/// Distance between momentum labels `a` and `b` in integer units.
pub fn momentum_distance(a: i64, b: i64, dim: usize, metric: DistanceMetric) -> i64 {
    match metric {
        DistanceMetric::Absolute => (a - b).abs(),
        DistanceMetric::Torus => {
            let n = dim as i64;
            let d = (a - b).rem_euclid(n);
            d.min(n - d)
        }
    }
}

/// `⟨(Δm)²⟩ = Σ_m W_m·d(m, m0)²`.
pub fn second_moment<T: Real>(w: &MomentumDistribution<T>, origin: i64, metric: DistanceMetric) -> T {
    w.iter()
        .map(|(m, p)| {
            let d = T::from_i64(momentum_distance(m, origin, w.dim(), metric)).expect("small label");
            p * d * d
        })
        .sum()
}

/// `min_m W_m`, the delocalized-fraction proxy.
pub fn baseline_offset<T: Real>(w: &MomentumDistribution<T>) -> T {
    w.values().iter().copied().fold(T::infinity(), T::min)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FwhmMethod {
    /// Each population is a unit-width bar on `[m − 1/2, m + 1/2)`; the
    /// half-level crossings fall on bar edges, so the width counts the
    /// contiguous bars around the peak that reach the half level.
    #[default]
    Binned,
    /// Linear interpolation between neighbouring populations.
    Interpolated,
}

/// Full width at half maximum measured from the baseline.
///
/// Peak is the largest population (ties go to the label nearest `m = 0`,
/// then to the smaller label). Half level is `min + (max − min)/2`, so adding
/// a uniform offset never changes the width. The walk to either side wraps
/// around the torus. A flat distribution returns `N`.
pub fn fwhm<T: Real>(w: &MomentumDistribution<T>, method: FwhmMethod) -> T {
    let n = w.dim();
    let vals = w.values();
    let peak_val = vals.iter().copied().fold(T::neg_infinity(), T::max);
    let base = baseline_offset(w);
    let n_t = T::from_usize(n).expect("small dimension");
    if peak_val - base < T::lit(1e-12) {
        return n_t;
    }
    let peak = w
        .iter()
        .filter(|&(_, p)| p == peak_val)
        .map(|(m, _)| m)
        .min_by_key(|&m| (m.abs(), m))
        .expect("non-empty distribution");
    let p = label_to_index(peak, n);
    let half = base + (peak_val - base) / T::lit(2.0);

    let walk = |dir: isize| -> T {
        let mut prev = peak_val;
        for d in 1..n {
            let idx = (p as isize + dir * d as isize).rem_euclid(n as isize) as usize;
            let cur = vals[idx];
            if cur < half {
                let steps = T::from_usize(d - 1).expect("small dimension");
                return match method {
                    FwhmMethod::Binned => steps + T::lit(0.5),
                    FwhmMethod::Interpolated => steps + (prev - half) / (prev - cur),
                };
            }
            prev = cur;
        }
        n_t
    };
    (walk(1) + walk(-1)).min(n_t)
}

/// Derived map parameters and the heuristic localization predictions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizationEstimates<T> {
    pub kick_strength: T,
    pub period: T,
    pub diffusion: T,
    pub onset_time: T,
    pub localization_length: T,
    /// `t* < 1`: localized without an initial diffusive transient.
    pub perturbative: bool,
}

pub fn localization_estimates<T: Real>(p: &SawtoothParams<T>) -> LocalizationEstimates<T> {
    LocalizationEstimates {
        kick_strength: p.kick_strength(),
        period: p.period(),
        diffusion: p.diffusion(),
        onset_time: p.onset_time(),
        localization_length: p.localization_length(),
        perturbative: p.is_perturbative(),
    }
}

/// `−Σ λ log₂ λ` over eigenvalues above 1e−14.
pub fn von_neumann_entropy<T: Real>(rho: &DensityState<T>) -> Result<T> {
    let eig = hermitian_eigen(rho.matrix())?;
    let floor = T::lit(1e-14);
    Ok(eig
        .values
        .iter()
        .filter(|&&l| l > floor)
        .map(|&l| -l * l.log2())
        .sum())
}

/// Ordinary least-squares fit `y ≈ slope·x + intercept`.
pub fn linear_fit<T: Real>(xs: &[T], ys: &[T]) -> Option<(T, T)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = T::from_usize(xs.len())?;
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let sxx: T = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    if sxx == T::zero() {
        return None;
    }
    let sxy: T = xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}
