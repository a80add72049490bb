use serde::{Deserialize, Serialize};

use crate::scalar::{cre, Complex, Real};
use crate::tensor::{devectorize_matrix, hermitian_eigen, vectorize_matrix, ComplexMatrix, DensityState};
use crate::{Error, Result};

/// Linear map on column-stacked `N×N` operators, stored as an `N²×N²` matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Superoperator<T> {
    dim: usize,
    matrix: ComplexMatrix<T>,
}

impl<T: Real> Superoperator<T> {
    pub fn from_matrix(matrix: ComplexMatrix<T>) -> Result<Self> {
        let side = matrix.square_dim()?;
        let dim = crate::tensor::perfect_square_root(side).ok_or(Error::NotPerfectSquare(side))?;
        Ok(Self { dim, matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::identity(dim * dim),
        }
    }

    /// `conj(U) ⊗ U`, so that `S·vec(ρ) = vec(UρU†)`.
    pub fn from_unitary(u: &ComplexMatrix<T>) -> Result<Self> {
        let dim = u.square_dim()?;
        let defect = u.unitarity_defect();
        if !(defect <= T::tolerance(1e-10)) {
            return Err(Error::NotUnitary {
                deviation: defect.as_f64(),
            });
        }
        Ok(Self {
            dim,
            matrix: u.conj().kron(u),
        })
    }

    /// `conj(A) ⊗ A` without any check on `A`.
    pub fn from_operator(a: &ComplexMatrix<T>) -> Self {
        Self {
            dim: a.rows(),
            matrix: a.conj().kron(a),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn apply_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        self.matrix.mul_vec(v)
    }

    pub fn apply_matrix(&self, rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        if rho.rows() != self.dim || !rho.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.rows(),
            });
        }
        devectorize_matrix(&self.apply_vec(&vectorize_matrix(rho)))
    }

    pub fn apply(&self, rho: &DensityState<T>) -> Result<DensityState<T>> {
        DensityState::from_channel_output(self.apply_matrix(rho.matrix())?)
    }

    /// `self` after `first`: the matrix product `self·first`.
    pub fn after(&self, first: &Self) -> Result<Self> {
        compose(self, first)
    }

    pub fn power(&self, t: usize) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..t {
            out.matrix = self.matrix.matmul(&out.matrix);
        }
        out
    }

    /// `‖S†·vec(I) − vec(I)‖`: zero exactly when `Tr S(ρ) = Tr ρ` for all `ρ`.
    pub fn trace_preservation_defect(&self) -> T {
        let id = vectorize_matrix(&ComplexMatrix::<T>::identity(self.dim));
        let image = self.matrix.adjoint().mul_vec(&id);
        image
            .iter()
            .zip(&id)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    pub fn is_trace_preserving(&self, tol: T) -> bool {
        self.trace_preservation_defect() <= tol
    }

    /// `‖S·vec(I) − vec(I)‖`.
    pub fn unitality_defect(&self) -> T {
        let id = vectorize_matrix(&ComplexMatrix::<T>::identity(self.dim));
        let image = self.apply_vec(&id);
        image
            .iter()
            .zip(&id)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    /// Choi matrix by reshuffling: `C[i + kN, j + lN] = S[i + jN, k + lN]`.
    ///
    /// For `S = Σ conj(A)⊗A` this gives `C = Σ vec(A)·vec(A)†`.
    pub fn choi(&self) -> ComplexMatrix<T> {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        out[(i + k * n, j + l * n)] = self.matrix[(i + j * n, k + l * n)];
                    }
                }
            }
        }
        out
    }

    /// Smallest eigenvalue of the Hermitian part of the Choi matrix.
    pub fn min_choi_eigenvalue(&self) -> Result<T> {
        Ok(hermitian_eigen(&self.choi())?.values[0])
    }

    pub fn is_completely_positive(&self, tol: T) -> Result<bool> {
        Ok(self.min_choi_eigenvalue()? >= -tol)
    }
}

/// Matrix product `second·first`: apply `first`, then `second`.
pub fn compose<T: Real>(second: &Superoperator<T>, first: &Superoperator<T>) -> Result<Superoperator<T>> {
    if second.dim != first.dim {
        return Err(Error::DimensionMismatch {
            expected: second.dim,
            found: first.dim,
        });
    }
    Ok(Superoperator {
        dim: first.dim,
        matrix: second.matrix.matmul(&first.matrix),
    })
}

/// Convex combination `Σ p_k·S_k`; probabilities must be non-negative and sum
/// to 1 within 1e−6. Terms are summed in the given order.
pub fn mix<T: Real>(channels: &[(Superoperator<T>, T)]) -> Result<Superoperator<T>> {
    let (first, _) = channels.first().ok_or(Error::ProbabilitySum { sum: 0.0 })?;
    let dim = first.dim;
    let mut sum = T::zero();
    for (s, p) in channels {
        if s.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim,
            });
        }
        if !p.is_finite() || *p < T::zero() {
            return Err(Error::OutOfRange {
                name: "probability",
                value: p.as_f64(),
                allowed: ">= 0",
            });
        }
        sum += *p;
    }
    if (sum - T::one()).abs() > T::tolerance(1e-6) {
        return Err(Error::ProbabilitySum { sum: sum.as_f64() });
    }
    let side = dim * dim;
    let mut acc = ComplexMatrix::zeros(side, side);
    for (s, p) in channels {
        acc = &acc + &s.matrix.scale(cre(*p));
    }
    Ok(Superoperator { dim, matrix: acc })
}
