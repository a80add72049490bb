//! Pauli-diagonal relaxation.
//!
//! Each Pauli string `P` decays as `e^{−r(P)·τ}` with
//! `r(P) = Σ_q {0 for I, r1_q for Z, r2_q for X and Y}`. The identity string
//! never decays, so the channel is unital and trace preserving and relaxes
//! every state toward `I/N`.

use serde::{Deserialize, Serialize};

use crate::channels::Superoperator;
use crate::scalar::{cre, Real};
use crate::tensor::{ComplexMatrix, Pauli, PauliString};
use crate::{Error, Result};

/// Per-qubit longitudinal (`r1`) and transverse (`r2`) rates in s⁻¹, indexed
/// by bit position.
///
/// Each qubit needs `r2 ≥ r1/2` (`T2 ≤ 2·T1`); below that the single-qubit
/// decay factors violate `1 + λ_z ≥ 2λ_xy` and the channel is not completely
/// positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelaxationRates<T> {
    longitudinal: Vec<T>,
    transverse: Vec<T>,
}

impl<T: Real> RelaxationRates<T> {
    pub fn new(longitudinal: Vec<T>, transverse: Vec<T>) -> Result<Self> {
        if longitudinal.len() != transverse.len() {
            return Err(Error::DimensionMismatch {
                expected: longitudinal.len(),
                found: transverse.len(),
            });
        }
        for &r in longitudinal.iter().chain(&transverse) {
            if !r.is_finite() || r < T::zero() {
                return Err(Error::OutOfRange {
                    name: "relaxation rate",
                    value: r.as_f64(),
                    allowed: ">= 0",
                });
            }
        }
        for (&r1, &r2) in longitudinal.iter().zip(&transverse) {
            if r2 < r1 / T::lit(2.0) {
                return Err(Error::OutOfRange {
                    name: "transverse rate",
                    value: r2.as_f64(),
                    allowed: ">= longitudinal / 2",
                });
            }
        }
        Ok(Self {
            longitudinal,
            transverse,
        })
    }

    pub fn uniform(n_qubits: usize, r1: T, r2: T) -> Result<Self> {
        Self::new(vec![r1; n_qubits], vec![r2; n_qubits])
    }

    /// 1 s⁻¹ on every qubit, the typical rate of the three-spin processor.
    pub fn typical(n_qubits: usize) -> Self {
        Self::uniform(n_qubits, T::one(), T::one()).expect("valid rates")
    }

    pub fn n_qubits(&self) -> usize {
        self.longitudinal.len()
    }

    pub fn longitudinal(&self) -> &[T] {
        &self.longitudinal
    }

    pub fn transverse(&self) -> &[T] {
        &self.transverse
    }

    /// `r(P)` for one Pauli string.
    pub fn rate(&self, s: PauliString) -> T {
        (0..self.n_qubits())
            .map(|q| match s.factor(q) {
                Pauli::I => T::zero(),
                Pauli::Z => self.longitudinal[q],
                Pauli::X | Pauli::Y => self.transverse[q],
            })
            .sum()
    }
}

/// `S = Σ_P e^{−r(P)τ}·vec(P)·vec(P)†/N` in the column-stacking basis.
pub fn relaxation_superop<T: Real>(rates: &RelaxationRates<T>, tau: T) -> Result<Superoperator<T>> {
    if !tau.is_finite() || tau < T::zero() {
        return Err(Error::OutOfRange {
            name: "relaxation time",
            value: tau.as_f64(),
            allowed: ">= 0",
        });
    }
    let n_qubits = rates.n_qubits();
    let dim = 1usize << n_qubits;
    let inv_n = T::one() / T::from_usize(dim).expect("small dimension");
    let mut m = ComplexMatrix::zeros(dim * dim, dim * dim);
    for s in PauliString::all(n_qubits) {
        let weight = (-rates.rate(s) * tau).exp() * inv_n;
        // vec(P) is nonzero at (y + x·N) for P|x⟩ = ph·|y⟩
        let entries: Vec<_> = (0..dim)
            .map(|x| {
                let (y, ph) = s.act::<T>(x);
                (y + x * dim, ph)
            })
            .collect();
        for &(a, pa) in &entries {
            for &(b, pb) in &entries {
                m[(a, b)] += pa * pb.conj() * cre(weight);
            }
        }
    }
    Superoperator::from_matrix(m)
}
