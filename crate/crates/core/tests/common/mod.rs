#![allow(dead_code)]

use rand::Rng;
use sawtooth_core::channels::{compose, mix, relaxation_superop, RelaxationRates, Superoperator};
use sawtooth_core::tensor::{hermitian_evolve, ComplexMatrix, DensityState};
use sawtooth_core::Complex;

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix<f64> {
    ComplexMatrix::from_fn(n, n, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).hermitian_part()
}

pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix<f64> {
    hermitian_evolve(&random_hermitian(rng, n), 2.0).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> DensityState<f64> {
    let a = ComplexMatrix::from_fn(n, n, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = a.matmul(&a.adjoint());
    let tr = m.trace().re;
    DensityState::new(m.scale_real(1.0 / tr).hermitian_part()).unwrap()
}

/// A random trace-preserving channel built from unitaries, relaxation and
/// mixtures.
pub fn random_tp_channel<R: Rng>(rng: &mut R, n_qubits: usize) -> Superoperator<f64> {
    let dim = 1 << n_qubits;
    let mut s = Superoperator::identity(dim);
    for _ in 0..rng.gen_range(1..4) {
        let u = Superoperator::from_unitary(&random_unitary(rng, dim)).unwrap();
        let r1: Vec<f64> = (0..n_qubits).map(|_| rng.gen_range(0.0..3.0)).collect();
        let r2: Vec<f64> = r1.iter().map(|r| r / 2.0 + rng.gen_range(0.0..2.0)).collect();
        let rates = RelaxationRates::new(r1, r2).unwrap();
        let r = relaxation_superop(&rates, rng.gen_range(0.0..0.5)).unwrap();
        let step = if rng.gen_bool(0.5) {
            let v = Superoperator::from_unitary(&random_unitary(rng, dim)).unwrap();
            let p = rng.gen_range(0.0..1.0);
            mix(&[(u, p), (v, 1.0 - p)]).unwrap()
        } else {
            u
        };
        s = compose(&r, &compose(&step, &s).unwrap()).unwrap();
    }
    s
}
