//! Seeded random operators for unit tests.

use rand::Rng;

use crate::scalar::c;
use crate::tensor::{hermitian_evolve, ComplexMatrix, DensityState};

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix<f64> {
    ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix<f64> {
    random_matrix(rng, n).hermitian_part()
}

pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix<f64> {
    hermitian_evolve(&random_hermitian(rng, n), 2.0).unwrap()
}

/// `A·A†` normalized to unit trace.
pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> DensityState<f64> {
    let a = random_matrix(rng, n);
    let m = a.matmul(&a.adjoint());
    let tr = m.trace().re;
    DensityState::from_channel_output(m.scale_real(1.0 / tr)).unwrap()
}
