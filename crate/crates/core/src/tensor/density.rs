use serde::{Deserialize, Serialize};

use crate::scalar::{cre, Complex, Real};
use crate::tensor::{hermitian_eigen, ComplexMatrix};
use crate::{Error, Result};

/// Validated density matrix over the momentum computational basis.
///
/// Hermitian and unit-trace to 1e−12, eigenvalues no lower than −1e−10.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityState<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> DensityState<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        matrix.square_dim()?;
        if !matrix.is_finite() {
            return Err(Error::NonFinite("density matrix"));
        }
        let defect = matrix.hermiticity_defect();
        if defect > T::tolerance(1e-12) {
            return Err(Error::NotHermitian {
                deviation: defect.as_f64(),
            });
        }
        let trace = matrix.trace();
        if (trace - cre(T::one())).norm() > T::tolerance(1e-12) {
            return Err(Error::InvalidTrace {
                trace: trace.re.as_f64(),
            });
        }
        let lowest = hermitian_eigen(&matrix)?.values[0];
        if lowest < -T::tolerance(1e-10) {
            return Err(Error::NotPositive {
                eigenvalue: lowest.as_f64(),
            });
        }
        Ok(Self { matrix })
    }

    /// Symmetrizes `matrix` before validating; absorbs round-off left by
    /// channel application.
    pub fn from_channel_output(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::new(matrix.hermitian_part())
    }

    /// `|idx⟩⟨idx|` in dimension `dim`.
    pub fn basis(dim: usize, idx: usize) -> Result<Self> {
        if idx >= dim {
            return Err(Error::OutOfRange {
                name: "basis index",
                value: idx as f64,
                allowed: "[0, dim)",
            });
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(idx, idx)] = cre(T::one());
        Ok(Self { matrix: m })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let w = T::one() / T::from_usize(dim).expect("small dimension");
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(w),
        }
    }

    /// `|ψ⟩⟨ψ|` for a normalized amplitude vector.
    pub fn from_pure(psi: &[Complex<T>]) -> Result<Self> {
        let n = psi.len();
        Self::new(ComplexMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj()))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        if u.rows() != self.dim() || !u.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.rows(),
            });
        }
        Self::from_channel_output(u.matmul(&self.matrix).matmul(&u.adjoint()))
    }

    pub fn purity(&self) -> T {
        // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Real parts of the diagonal.
    pub fn populations(&self) -> Vec<T> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }
}

/// Column-stacking vectorization: entry `(i, j)` lands at `i + j·N`.
pub fn vectorize_matrix<T: Real>(m: &ComplexMatrix<T>) -> Vec<Complex<T>> {
    let (r, c) = (m.rows(), m.cols());
    let mut v = Vec::with_capacity(r * c);
    for j in 0..c {
        for i in 0..r {
            v.push(m[(i, j)]);
        }
    }
    v
}

/// Inverse of [`vectorize_matrix`] for a square matrix.
pub fn devectorize_matrix<T: Real>(v: &[Complex<T>]) -> Result<ComplexMatrix<T>> {
    let n = perfect_square_root(v.len()).ok_or(Error::NotPerfectSquare(v.len()))?;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| v[i + j * n]))
}

pub fn vectorize<T: Real>(rho: &DensityState<T>) -> Vec<Complex<T>> {
    vectorize_matrix(rho.matrix())
}

pub fn devectorize<T: Real>(v: &[Complex<T>]) -> Result<DensityState<T>> {
    DensityState::new(devectorize_matrix(v)?)
}

pub(crate) fn perfect_square_root(len: usize) -> Option<usize> {
    let n = (len as f64).sqrt().round() as usize;
    (n * n == len).then_some(n)
}
