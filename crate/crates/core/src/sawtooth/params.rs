use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

/// Largest register the map is built for.
pub const MAX_QUBITS: usize = 10;

/// Map parameters `(K, L, n_q)` and the quantities derived from them.
///
/// `N = 2^{n_q}`, period `T = 2πL/N`, kick strength `k = K/T`, classical
/// diffusion coefficient `D = (π²/3)k²`. The heuristic onset time and
/// localization length are both `≈ D`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams<T>", into = "RawParams<T>")]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct SawtoothParams<T> {
    chaos: T,
    windings: u32,
    n_qubits: usize,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
struct RawParams<T> {
    #[serde(rename = "K")]
    chaos: T,
    #[serde(rename = "L")]
    windings: u32,
    qubits: usize,
}

impl<T: Real> TryFrom<RawParams<T>> for SawtoothParams<T> {
    type Error = Error;

    fn try_from(raw: RawParams<T>) -> Result<Self> {
        Self::new(raw.chaos, raw.windings, raw.qubits)
    }
}

impl<T: Real> From<SawtoothParams<T>> for RawParams<T> {
    fn from(p: SawtoothParams<T>) -> Self {
        RawParams {
            chaos: p.chaos,
            windings: p.windings,
            qubits: p.n_qubits,
        }
    }
}

impl<T: Real> SawtoothParams<T> {
    pub fn new(chaos: T, windings: u32, n_qubits: usize) -> Result<Self> {
        if !chaos.is_finite() {
            return Err(Error::NonFinite("K"));
        }
        if windings == 0 {
            return Err(Error::OutOfRange {
                name: "L",
                value: 0.0,
                allowed: ">= 1",
            });
        }
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::OutOfRange {
                name: "qubits",
                value: n_qubits as f64,
                allowed: "1..=10",
            });
        }
        Ok(Self {
            chaos,
            windings,
            n_qubits,
        })
    }

    /// `K = 1.5, L = 7, n_q = 3`: perturbative localization on eight levels.
    pub fn reference() -> Self {
        Self::new(T::lit(1.5), 7, 3).expect("valid reference parameters")
    }

    /// `K = k·T`.
    pub fn chaos(&self) -> T {
        self.chaos
    }

    pub fn windings(&self) -> u32 {
        self.windings
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `N = 2^{n_q}` momentum levels.
    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    fn dim_t(&self) -> T {
        T::from_usize(self.dim()).expect("small dimension")
    }

    /// `T = 2πL/N`.
    pub fn period(&self) -> T {
        T::TAU() * T::from_u32(self.windings).expect("small count") / self.dim_t()
    }

    /// `k = K/T`.
    pub fn kick_strength(&self) -> T {
        self.chaos / self.period()
    }

    /// `D = (π²/3)·k²`.
    pub fn diffusion(&self) -> T {
        let k = self.kick_strength();
        T::PI() * T::PI() / T::lit(3.0) * k * k
    }

    /// Heuristic `t* ≈ D`.
    pub fn onset_time(&self) -> T {
        self.diffusion()
    }

    /// Heuristic `ξ ≈ (π²/3)k²`.
    pub fn localization_length(&self) -> T {
        self.diffusion()
    }

    pub fn is_perturbative(&self) -> bool {
        self.onset_time() < T::one()
    }

    /// Momentum label of computational index `idx`: `m = idx − N/2`.
    pub fn momentum_of(&self, idx: usize) -> i64 {
        idx as i64 - (self.dim() / 2) as i64
    }

    /// Computational index of momentum label `m ∈ [−N/2, N/2)`.
    pub fn index_of(&self, m: i64) -> usize {
        crate::diagnostics::label_to_index(m, self.dim())
    }
}
