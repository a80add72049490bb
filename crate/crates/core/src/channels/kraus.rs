use serde::{Deserialize, Serialize};

use crate::channels::Superoperator;
use crate::scalar::{cre, Complex, Real};
use crate::tensor::{devectorize_matrix, hermitian_eigen, ComplexMatrix, DensityState};
use crate::{Error, Result};

/// Choi eigenvalues below this are treated as a genuine CP violation.
pub const CP_VIOLATION: f64 = 1e-6;
/// Operators whose Choi eigenvalue falls below this are discarded.
pub const RANK_CUTOFF: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KrausOperator<T> {
    pub matrix: ComplexMatrix<T>,
    /// Frobenius norm of `matrix`.
    pub magnitude: T,
}

/// Operator-sum form `ρ ↦ Σ A_k ρ A_k†`, sorted by descending magnitude.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KrausSet<T> {
    dim: usize,
    operators: Vec<KrausOperator<T>>,
}

impl<T: Real> KrausSet<T> {
    /// Builds a set from arbitrary operators; magnitudes are computed and
    /// the operators sorted.
    pub fn from_operators(dim: usize, ops: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let mut operators = Vec::with_capacity(ops.len());
        for m in ops {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.rows(),
                });
            }
            let magnitude = m.frobenius_norm();
            operators.push(KrausOperator { matrix: m, magnitude });
        }
        operators.sort_by(|a, b| b.magnitude.partial_cmp(&a.magnitude).expect("finite magnitudes"));
        Ok(Self { dim, operators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn operators(&self) -> &[KrausOperator<T>] {
        &self.operators
    }

    pub fn leading(&self) -> Option<&KrausOperator<T>> {
        self.operators.first()
    }

    pub fn magnitudes(&self) -> Vec<T> {
        self.operators.iter().map(|k| k.magnitude).collect()
    }

    pub fn to_superoperator(&self) -> Superoperator<T> {
        let side = self.dim * self.dim;
        let mut acc = ComplexMatrix::zeros(side, side);
        for k in &self.operators {
            acc = &acc + Superoperator::from_operator(&k.matrix).matrix();
        }
        Superoperator::from_matrix(acc).expect("square by construction")
    }

    pub fn apply_matrix(&self, rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.operators {
            acc = &acc + &k.matrix.matmul(rho).matmul(&k.matrix.adjoint());
        }
        acc
    }

    pub fn apply(&self, rho: &DensityState<T>) -> Result<DensityState<T>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        DensityState::from_channel_output(self.apply_matrix(rho.matrix()))
    }

    /// `‖Σ A_k†A_k − I‖_F`.
    pub fn completeness_deviation(&self) -> T {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.operators {
            acc = &acc + &k.matrix.adjoint().matmul(&k.matrix);
        }
        acc.distance(&ComplexMatrix::identity(self.dim))
    }
}

/// Kraus form from the Choi eigendecomposition: `A_k = unvec(√λ_k·v_k)`.
///
/// Eigenvalues in `[−1e−6, 0)` are clipped; anything more negative is
/// reported as `NotCompletelyPositive`.
pub fn kraus_decompose<T: Real>(s: &Superoperator<T>) -> Result<KrausSet<T>> {
    let n = s.dim();
    let choi = s.choi().hermitian_part();
    let eig = hermitian_eigen(&choi)?;
    let min = eig.values[0];
    if min < -T::lit(CP_VIOLATION) {
        return Err(Error::NotCompletelyPositive {
            eigenvalue: min.as_f64(),
        });
    }
    let mut ops = Vec::new();
    for k in (0..eig.values.len()).rev() {
        let lambda = eig.values[k];
        if lambda <= T::lit(RANK_CUTOFF) {
            continue;
        }
        let root = cre(lambda.sqrt());
        let v: Vec<Complex<T>> = eig.vector(k).into_iter().map(|z| z * root).collect();
        ops.push(devectorize_matrix(&v)?);
    }
    KrausSet::from_operators(n, ops)
}
