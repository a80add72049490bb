//! Dense complex linear algebra: matrices, Hermitian spectra, density states,
//! column-stacking vectorization, and the n-qubit Pauli basis.

mod density;
mod eigen;
mod matrix;
mod pauli;
#[cfg(test)]
pub(crate) mod testing;

pub use density::{devectorize, devectorize_matrix, vectorize, vectorize_matrix, DensityState};
pub(crate) use density::perfect_square_root;
pub use eigen::{hermitian_eigen, hermitian_evolve, unitary_eigen, HermitianEigen, UnitaryEigen};
pub use matrix::ComplexMatrix;
pub use pauli::{
    pauli_expand, pauli_expand_matrix, pauli_reconstruct, pauli_reconstruct_matrix, qubit_count, Pauli,
    PauliCoefficients, PauliString,
};
