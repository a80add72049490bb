//! Liquid-state NMR spin Hamiltonian.
//!
//! Offsets and couplings are given in Hz. The Hamiltonian is returned in
//! rad/s as `H = 2π·[Σ_i ν_i·σ_z^i/2 + Σ_{j<k} J_jk/4·C_jk]`, i.e. spin
//! operators `I = σ/2`, where `C_jk` is `σ_zσ_z` (weak) or `σ·σ` (full).

use serde::{Deserialize, Serialize};

use crate::scalar::{cre, Real};
use crate::tensor::{ComplexMatrix, Pauli, PauliString};
use crate::{Error, Result};

/// Converts Hz to rad/s.
pub const HZ_TO_RAD: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    Hydrogen,
    Carbon,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingForm {
    /// `σ_zσ_z` for every pair.
    Weak,
    /// `σ·σ` for every pair.
    Full,
    /// `σ·σ` between like species, `σ_zσ_z` between unlike ones.
    #[default]
    Secular,
}

/// Spins indexed by bit position (bit 0 is the least significant qubit).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinSystem<T> {
    species: Vec<Species>,
    offsets: Vec<T>,
    couplings: Vec<Vec<T>>,
    form: CouplingForm,
}

impl<T: Real> SpinSystem<T> {
    pub fn new(species: Vec<Species>, offsets: Vec<T>, couplings: Vec<Vec<T>>, form: CouplingForm) -> Result<Self> {
        let n = species.len();
        if offsets.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: offsets.len(),
            });
        }
        if couplings.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: couplings.len(),
            });
        }
        for (j, row) in couplings.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if row[j] != T::zero() {
                return Err(Error::OutOfRange {
                    name: "self coupling",
                    value: row[j].as_f64(),
                    allowed: "0",
                });
            }
            for (k, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite("coupling"));
                }
                if v != couplings[k][j] {
                    return Err(Error::OutOfRange {
                        name: "coupling asymmetry",
                        value: (v - couplings[k][j]).as_f64(),
                        allowed: "J symmetric",
                    });
                }
            }
        }
        if offsets.iter().any(|o| !o.is_finite()) {
            return Err(Error::NonFinite("offset"));
        }
        Ok(Self {
            species,
            offsets,
            couplings,
            form,
        })
    }

    /// Acetylene branch of tris(trimethylsilyl)silane-acetylene: hydrogen on
    /// the most significant bit, the two ¹³C spins split by 1201 Hz, couplings
    /// 235.7 Hz (H–C2), 132.6 Hz (C2–C3) and 42.9 Hz (H–C3). Offsets are
    /// relative to each species' carrier.
    pub fn three_qubit_acetylene() -> Self {
        let j = |x: f64| T::lit(x);
        let z = T::zero();
        Self::new(
            vec![Species::Carbon, Species::Carbon, Species::Hydrogen],
            vec![j(-600.5), j(600.5), z],
            vec![
                vec![z, j(132.6), j(42.9)],
                vec![j(132.6), z, j(235.7)],
                vec![j(42.9), j(235.7), z],
            ],
            CouplingForm::Secular,
        )
        .expect("reference system is valid")
    }

    /// `n` uncoupled spins of one species at zero offset.
    pub fn silent(n_qubits: usize, species: Species) -> Self {
        Self::new(
            vec![species; n_qubits],
            vec![T::zero(); n_qubits],
            vec![vec![T::zero(); n_qubits]; n_qubits],
            CouplingForm::Secular,
        )
        .expect("zero system is valid")
    }

    pub fn n_qubits(&self) -> usize {
        self.species.len()
    }

    pub fn species(&self) -> &[Species] {
        &self.species
    }

    pub fn offsets(&self) -> &[T] {
        &self.offsets
    }

    pub fn coupling(&self, j: usize, k: usize) -> T {
        self.couplings[j][k]
    }

    pub fn form(&self) -> CouplingForm {
        self.form
    }

    pub fn with_form(mut self, form: CouplingForm) -> Self {
        self.form = form;
        self
    }

    fn full_coupling(&self, j: usize, k: usize) -> bool {
        match self.form {
            CouplingForm::Weak => false,
            CouplingForm::Full => true,
            CouplingForm::Secular => self.species[j] == self.species[k],
        }
    }
}

fn two_body(n: usize, j: usize, k: usize, p: Pauli) -> PauliString {
    let mut f = vec![Pauli::I; n];
    f[j] = p;
    f[k] = p;
    PauliString::from_factors(&f)
}

/// Internal Hamiltonian in rad/s.
pub fn internal_hamiltonian<T: Real>(s: &SpinSystem<T>) -> ComplexMatrix<T> {
    let n = s.n_qubits();
    let dim = 1usize << n;
    let two_pi = T::lit(HZ_TO_RAD);
    let mut h = ComplexMatrix::zeros(dim, dim);
    let mut add = |p: PauliString, w: T| {
        if w != T::zero() {
            h = &h + &p.matrix::<T>().scale(cre(w));
        }
    };
    for q in 0..n {
        let mut f = vec![Pauli::I; n];
        f[q] = Pauli::Z;
        add(PauliString::from_factors(&f), two_pi * s.offsets[q] / T::lit(2.0));
    }
    for j in 0..n {
        for k in j + 1..n {
            let w = two_pi * s.couplings[j][k] / T::lit(4.0);
            add(two_body(n, j, k, Pauli::Z), w);
            if s.full_coupling(j, k) {
                add(two_body(n, j, k, Pauli::X), w);
                add(two_body(n, j, k, Pauli::Y), w);
            }
        }
    }
    h
}
