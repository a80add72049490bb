use crate::scalar::{cre, phase, Real};
use crate::tensor::{
    hermitian_evolve, pauli_expand_matrix, pauli_reconstruct_matrix, qubit_count, unitary_eigen, ComplexMatrix,
    DensityState,
};
use crate::{Error, Result};

/// `(1 − ε)·I/N + ε·|target⟩⟨target|`.
pub fn pseudopure_state<T: Real>(n_qubits: usize, target: usize, polarization: T) -> Result<DensityState<T>> {
    if !(polarization > T::zero() && polarization <= T::one()) {
        return Err(Error::OutOfRange {
            name: "polarization",
            value: polarization.as_f64(),
            allowed: "(0, 1]",
        });
    }
    let dim = 1usize << n_qubits;
    if target >= dim {
        return Err(Error::OutOfRange {
            name: "target index",
            value: target as f64,
            allowed: "0 <= target < N",
        });
    }
    let n = T::from_usize(dim).expect("small dimension");
    let bg = (T::one() - polarization) / n;
    let mut diag = vec![cre(bg); dim];
    diag[target] += cre(polarization);
    DensityState::new(ComplexMatrix::from_diagonal(&diag))
}

fn check_scale<T: Real>(s: T) -> Result<()> {
    if !s.is_finite() || s < T::zero() {
        return Err(Error::OutOfRange {
            name: "rf scale",
            value: s.as_f64(),
            allowed: ">= 0",
        });
    }
    Ok(())
}

/// `U^s` on the principal branch. `s = 1` returns `U` itself.
pub fn scale_gate<T: Real>(u: &ComplexMatrix<T>, s: T) -> Result<ComplexMatrix<T>> {
    check_scale(s)?;
    let eig = unitary_eigen(u)?;
    if s == T::one() {
        return Ok(u.clone());
    }
    Ok(eig.apply_fn(|th| phase(th * s)))
}

/// Scales a gate with a different rf power on each qubit.
///
/// The principal generator `G` (`U = e^{iG}`) is expanded in Pauli strings and
/// each term is multiplied by the mean scale of the qubits it acts on; the
/// identity term takes the mean over all qubits. Equal scales reduce to
/// [`scale_gate`].
pub fn scale_gate_per_qubit<T: Real>(u: &ComplexMatrix<T>, scales: &[T]) -> Result<ComplexMatrix<T>> {
    let n_qubits = qubit_count(u.square_dim()?)?;
    if scales.len() != n_qubits {
        return Err(Error::DimensionMismatch {
            expected: n_qubits,
            found: scales.len(),
        });
    }
    for &s in scales {
        check_scale(s)?;
    }
    if scales.iter().all(|&s| s == scales[0]) {
        return scale_gate(u, scales[0]);
    }
    let g = unitary_eigen(u)?.generator();
    let all_mean = scales.iter().copied().sum::<T>() / T::from_usize(n_qubits).expect("small count");
    let scaled = pauli_expand_matrix(&g)?.map(|p, w| {
        let support = p.support();
        let f = if support.is_empty() {
            all_mean
        } else {
            support.iter().map(|&q| scales[q]).sum::<T>() / T::from_usize(support.len()).expect("small count")
        };
        w * f
    });
    // U' = exp(i·G')
    hermitian_evolve(&pauli_reconstruct_matrix(&scaled).hermitian_part(), -T::one())
}

/// `exp(−i·H·τ)·U`: the ideal gate followed by free evolution under `H` for
/// the error time `τ`. `τ = 0` returns the gate unchanged.
pub fn coherent_error_gate<T: Real>(u: &ComplexMatrix<T>, h: &ComplexMatrix<T>, error_time: T) -> Result<ComplexMatrix<T>> {
    if !error_time.is_finite() || error_time < T::zero() {
        return Err(Error::OutOfRange {
            name: "coherent error time",
            value: error_time.as_f64(),
            allowed: ">= 0",
        });
    }
    if error_time == T::zero() {
        return Ok(u.clone());
    }
    Ok(hermitian_evolve(h, error_time)?.matmul(u))
}

/// `|Tr(V†U)|²/N²`.
pub fn average_gate_fidelity<T: Real>(implemented: &ComplexMatrix<T>, target: &ComplexMatrix<T>) -> Result<T> {
    let n = implemented.square_dim()?;
    if target.rows() != n || target.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: target.rows(),
        });
    }
    let tr = target.adjoint().matmul(implemented).trace();
    let nn = T::from_usize(n * n).expect("small dimension");
    Ok(tr.norm_sqr() / nn)
}

/// `Tr(ρ_a ρ_b)/√(Tr ρ_a²·Tr ρ_b²)`.
pub fn state_correlation<T: Real>(a: &DensityState<T>, b: &DensityState<T>) -> Result<T> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (pa, pb) = (a.purity(), b.purity());
    if pa <= T::zero() || pb <= T::zero() {
        return Err(Error::OutOfRange {
            name: "purity",
            value: pa.min(pb).as_f64(),
            allowed: "> 0",
        });
    }
    Ok(a.matrix().matmul(b.matrix()).trace().re / (pa * pb).sqrt())
}
