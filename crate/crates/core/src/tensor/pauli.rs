//! n-qubit Pauli strings and expansion of operators over them.
//!
//! Normalization: `c_P = Tr(P·ρ)/N` against unnormalized strings, so that
//! `ρ = Σ_P c_P·P`. A string is encoded base 4, digit `q` giving the factor
//! on bit `q` of the computational index (0 = I, 1 = X, 2 = Y, 3 = Z).

use serde::{Deserialize, Serialize};

use crate::scalar::{c, cre, Complex, Real};
use crate::tensor::{ComplexMatrix, DensityState};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_digit(d: usize) -> Self {
        match d & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    code: usize,
}

impl PauliString {
    pub fn new(n_qubits: usize, code: usize) -> Self {
        debug_assert!(code < 1 << (2 * n_qubits));
        Self { n_qubits, code }
    }

    pub fn from_factors(factors: &[Pauli]) -> Self {
        let code = factors.iter().enumerate().fold(0, |acc, (q, p)| {
            let d = match p {
                Pauli::I => 0,
                Pauli::X => 1,
                Pauli::Y => 2,
                Pauli::Z => 3,
            };
            acc | (d << (2 * q))
        });
        Self {
            n_qubits: factors.len(),
            code,
        }
    }

    /// All `4^n` strings in code order.
    pub fn all(n_qubits: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * n_qubits)).map(move |code| PauliString { n_qubits, code })
    }

    pub fn code(&self) -> usize {
        self.code
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn factor(&self, qubit: usize) -> Pauli {
        Pauli::from_digit(self.code >> (2 * qubit))
    }

    pub fn is_identity(&self) -> bool {
        self.code == 0
    }

    /// Qubits on which the string acts nontrivially.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits).filter(|&q| self.factor(q) != Pauli::I).collect()
    }

    /// `P|x⟩ = phase·|x ⊕ flips⟩`: returns `(x ⊕ flips, phase)`.
    pub fn act<T: Real>(&self, x: usize) -> (usize, Complex<T>) {
        let mut y = x;
        let mut ph = cre(T::one());
        for q in 0..self.n_qubits {
            let bit = (x >> q) & 1;
            match self.factor(q) {
                Pauli::I => {}
                Pauli::X => y ^= 1 << q,
                Pauli::Y => {
                    y ^= 1 << q;
                    // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
                    ph *= if bit == 0 { c(T::zero(), T::one()) } else { c(T::zero(), -T::one()) };
                }
                Pauli::Z => {
                    if bit == 1 {
                        ph = -ph;
                    }
                }
            }
        }
        (y, ph)
    }

    pub fn matrix<T: Real>(&self) -> ComplexMatrix<T> {
        let n = 1usize << self.n_qubits;
        let mut m = ComplexMatrix::zeros(n, n);
        for x in 0..n {
            let (y, ph) = self.act::<T>(x);
            m[(y, x)] = ph;
        }
        m
    }
}

/// Weights of an operator over all `4^n` Pauli strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliCoefficients<T> {
    n_qubits: usize,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> PauliCoefficients<T> {
    pub fn new(n_qubits: usize, coeffs: Vec<Complex<T>>) -> Result<Self> {
        let expected = 1usize << (2 * n_qubits);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self { n_qubits, coeffs })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn get(&self, s: PauliString) -> Complex<T> {
        self.coeffs[s.code()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (PauliString, Complex<T>)> + '_ {
        let n = self.n_qubits;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(code, &w)| (PauliString::new(n, code), w))
    }

    /// Applies `f(string, weight)` to every coefficient.
    pub fn map(&self, f: impl Fn(PauliString, Complex<T>) -> Complex<T>) -> Self {
        Self {
            n_qubits: self.n_qubits,
            coeffs: self.iter().map(|(s, w)| f(s, w)).collect(),
        }
    }
}

/// Number of qubits for a power-of-two dimension.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Expands any square operator: `c_P = Tr(P·M)/N`.
pub fn pauli_expand_matrix<T: Real>(m: &ComplexMatrix<T>) -> Result<PauliCoefficients<T>> {
    let dim = m.square_dim()?;
    let n_qubits = qubit_count(dim)?;
    let inv_n = T::one() / T::from_usize(dim).expect("small dimension");
    let coeffs = PauliString::all(n_qubits)
        .map(|s| {
            // Tr(P M) = Σ_x P[y, x]·M[x, y] with y = x ⊕ flips
            let mut acc = c(T::zero(), T::zero());
            for x in 0..dim {
                let (y, ph) = s.act::<T>(x);
                acc += ph * m[(x, y)];
            }
            acc * inv_n
        })
        .collect();
    Ok(PauliCoefficients { n_qubits, coeffs })
}

/// `Σ_P c_P·P`.
pub fn pauli_reconstruct_matrix<T: Real>(coeffs: &PauliCoefficients<T>) -> ComplexMatrix<T> {
    let dim = 1usize << coeffs.n_qubits;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (s, w) in coeffs.iter() {
        if w.re == T::zero() && w.im == T::zero() {
            continue;
        }
        for x in 0..dim {
            let (y, ph) = s.act::<T>(x);
            m[(y, x)] += w * ph;
        }
    }
    m
}

pub fn pauli_expand<T: Real>(rho: &DensityState<T>) -> Result<PauliCoefficients<T>> {
    pauli_expand_matrix(rho.matrix())
}

pub fn pauli_reconstruct<T: Real>(coeffs: &PauliCoefficients<T>) -> Result<DensityState<T>> {
    DensityState::new(pauli_reconstruct_matrix(coeffs))
}
