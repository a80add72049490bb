//! Hermitian eigendecomposition (cyclic complex Jacobi) and the functions of
//! Hermitian and unitary matrices built on it.
//!
//! Dimensions in scope are at most a few hundred, and every generator the
//! crate exponentiates is Hermitian, so there is no general matrix exponential.

use crate::scalar::{c, cre, phase, Complex, Real};
use crate::tensor::ComplexMatrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Spectrum of a Hermitian matrix: ascending eigenvalues and the matching
/// orthonormal eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V · diag(f(λ)) · V†`.
    pub fn apply_fn(&self, f: impl Fn(T) -> Complex<T>) -> ComplexMatrix<T> {
        let n = self.values.len();
        let fv: Vec<Complex<T>> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum()
        })
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.values.len()).map(|i| self.vectors[(i, k)]).collect()
    }
}

/// Diagonalizes a Hermitian matrix. Only the Hermitian part of the input is
/// used; callers that care about the input being Hermitian check it first.
pub fn hermitian_eigen<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = h.square_dim()?;
    if !h.is_finite() {
        return Err(Error::NonFinite("Hermitian matrix"));
    }
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::<T>::identity(n);
    let scale = a.frobenius_norm();
    let threshold = T::epsilon() * scale;

    let off_norm = |a: &ComplexMatrix<T>| -> T {
        let mut s = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                s += a[(p, q)].norm_sqr();
            }
        }
        (s + s).sqrt()
    };

    let mut converged = n < 2 || scale == T::zero();
    for _ in 0..MAX_SWEEPS {
        if converged || off_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= T::min_positive_value() {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (mag + mag);
                let t = if theta == T::zero() {
                    T::one()
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                // rotation R acting on the (p, q) plane; e^{-iα} removes the phase of a_pq
                let ph = (apq / mag).conj();
                let r_pp = cre(cs);
                let r_pq = cre(sn);
                let r_qp = ph * (-sn);
                let r_qq = ph * cs;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * r_pp + akq * r_qp;
                    a[(k, q)] = akp * r_pq + akq * r_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = r_pp.conj() * apk + r_qp.conj() * aqk;
                    a[(q, k)] = r_pq.conj() * apk + r_qq.conj() * aqk;
                }
                a[(p, q)] = c(T::zero(), T::zero());
                a[(q, p)] = c(T::zero(), T::zero());
                a[(p, p)] = cre(a[(p, p)].re);
                a[(q, q)] = cre(a[(q, q)].re);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * r_pp + vkq * r_qp;
                    v[(k, q)] = vkp * r_pq + vkq * r_qq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > threshold * T::lit(1.0e3) {
        return Err(Error::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// `exp(−i·H·t)` for Hermitian `H`.
pub fn hermitian_evolve<T: Real>(h: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    if !t.is_finite() {
        return Err(Error::NonFinite("evolution time"));
    }
    h.square_dim()?;
    let defect = h.hermiticity_defect();
    if !(defect <= T::tolerance(1e-10)) {
        return Err(Error::NotHermitian {
            deviation: defect.as_f64(),
        });
    }
    let eig = hermitian_eigen(h)?;
    Ok(eig.apply_fn(|l| phase(-l * t)))
}

/// Spectral data of a unitary: principal eigenphases in `(−π, π]` and an
/// orthonormal eigenbasis, with `U = V·diag(e^{iθ})·V†`.
#[derive(Clone, Debug)]
pub struct UnitaryEigen<T> {
    pub phases: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> UnitaryEigen<T> {
    /// `V · diag(f(θ)) · V†`.
    pub fn apply_fn(&self, f: impl Fn(T) -> Complex<T>) -> ComplexMatrix<T> {
        HermitianEigen {
            values: self.phases.clone(),
            vectors: self.vectors.clone(),
        }
        .apply_fn(f)
    }

    /// Principal Hermitian generator `G` with `U = exp(iG)`.
    pub fn generator(&self) -> ComplexMatrix<T> {
        self.apply_fn(cre)
    }
}

/// Diagonalizes a unitary by diagonalizing a generic real combination of its
/// commuting Hermitian and anti-Hermitian parts, then reading the eigenphases
/// off `V†UV`. A combination that accidentally merges distinct eigenvalues
/// leaves `V†UV` non-diagonal and the next mixing weight is tried.
pub fn unitary_eigen<T: Real>(u: &ComplexMatrix<T>) -> Result<UnitaryEigen<T>> {
    let n = u.square_dim()?;
    let defect = u.unitarity_defect();
    if !(defect <= T::tolerance(1e-10)) {
        return Err(Error::NotUnitary {
            deviation: defect.as_f64(),
        });
    }
    let adj = u.adjoint();
    let re_part = ComplexMatrix::from_fn(n, n, |i, j| (u[(i, j)] + adj[(i, j)]) * T::lit(0.5));
    let im_part = ComplexMatrix::from_fn(n, n, |i, j| {
        (u[(i, j)] - adj[(i, j)]) * c(T::zero(), T::lit(-0.5))
    });
    let tol = T::tolerance(1e-9) * T::from_usize(n.max(1)).expect("small dimension");
    let pi = T::PI();

    for &weight in &[0.577_215_664_901_532_9, 1.414_213_562_373_095, -0.318_309_886_183_790_7, 2.718_281_828_459_045] {
        let w = T::lit(weight);
        let mix = ComplexMatrix::from_fn(n, n, |i, j| re_part[(i, j)] + im_part[(i, j)] * w);
        let eig = hermitian_eigen(&mix)?;
        let v = eig.vectors;
        let d = v.adjoint().matmul(u).matmul(&v);
        let mut off = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off.max(d[(i, j)].norm());
                }
            }
        }
        if off > tol {
            continue;
        }
        let phases = (0..n)
            .map(|i| {
                let th = d[(i, i)].arg();
                if th <= -pi + T::tolerance(1e-9) {
                    pi
                } else {
                    th
                }
            })
            .collect();
        return Ok(UnitaryEigen { phases, vectors: v });
    }
    Err(Error::Diagonalization("eigenbasis did not diagonalize the unitary"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::testing::{random_hermitian, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Scaled-and-squared Taylor series of exp(−iHt), 40 terms.
    fn taylor_exp(h: &ComplexMatrix<f64>, t: f64) -> ComplexMatrix<f64> {
        let n = h.rows();
        let squarings = 8;
        let a = h.scale(c(0.0, -t / f64::from(1 << squarings)));
        let mut term = ComplexMatrix::identity(n);
        let mut sum = ComplexMatrix::identity(n);
        for k in 1..=40 {
            term = term.matmul(&a).scale_real(1.0 / k as f64);
            sum = &sum + &term;
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        sum
    }

    #[test]
    fn zero_generator_gives_identity() {
        let u = hermitian_evolve(&ComplexMatrix::<f64>::zeros(4, 4), 1.7).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn diagonal_generator() {
        let h = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let t = std::f64::consts::FRAC_PI_2;
        let u = hermitian_evolve(&h, t).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[phase(-t), phase(t)]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn matches_taylor_series_on_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let h = random_hermitian(&mut rng, 8);
            let u = hermitian_evolve(&h, 0.3).unwrap();
            let oracle = taylor_exp(&h, 0.3);
            assert!(u.max_abs_diff(&oracle) < 1e-8);
            assert!(u.unitarity_defect() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_hermitian_and_non_finite_time() {
        let mut m = ComplexMatrix::<f64>::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(hermitian_evolve(&m, 1.0), Err(Error::NotHermitian { .. })));
        let h = ComplexMatrix::<f64>::identity(2);
        assert!(matches!(hermitian_evolve(&h, f64::NAN), Err(Error::NonFinite(_))));
    }

    #[test]
    fn eigen_reconstructs_and_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 2, 5, 16, 64] {
            let h = random_hermitian(&mut rng, n);
            let eig = hermitian_eigen(&h).unwrap();
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            assert!(eig.vectors.unitarity_defect() < 1e-11);
            let back = eig.apply_fn(cre);
            assert!(back.max_abs_diff(&h) < 1e-11 * (n as f64));
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let h = ComplexMatrix::from_diagonal(&[c(2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)]);
        let eig = hermitian_eigen(&h).unwrap();
        assert_eq!(eig.values, vec![-1.0, 2.0, 2.0]);
    }

    #[test]
    fn unitary_eigen_reconstructs_including_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(&mut rng, 8);
        let eig = unitary_eigen(&u).unwrap();
        assert!(eig.apply_fn(phase).max_abs_diff(&u) < 1e-10);

        // heavily degenerate spectrum {±1, ±i}: the 8-point DFT
        let n = 8;
        let f = ComplexMatrix::from_fn(n, n, |j, k| {
            phase(2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64) / (n as f64).sqrt()
        });
        let eig = unitary_eigen(&f).unwrap();
        assert!(eig.apply_fn(phase).max_abs_diff(&f) < 1e-10);
        assert!(eig.phases.iter().all(|&p| p > -std::f64::consts::PI && p <= std::f64::consts::PI));
        assert!(eig.phases.iter().any(|&p| (p - std::f64::consts::PI).abs() < 1e-9));
    }

    #[test]
    fn works_in_single_precision() {
        let h = ComplexMatrix::<f32>::from_fn(3, 3, |i, j| {
            if i == j {
                c(i as f32, 0.0)
            } else {
                c(0.1, if i < j { 0.2 } else { -0.2 })
            }
        });
        let u = hermitian_evolve(&h, 0.5f32).unwrap();
        assert!(u.unitarity_defect() < 1e-5);
    }
}
