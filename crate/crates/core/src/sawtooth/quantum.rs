//! Quantum sawtooth map `U = U_m · F⁻¹ · U_φ · F` on `N = 2^{n_q}` levels.
//!
//! Momentum label `m` lives at computational index `m + N/2`, so the index
//! `4 = |100⟩` of a three-qubit register is `m = 0`. Under this map the
//! `(m + N/2)` phase of the conjugate-basis overlap is absorbed and `F` is the
//! plain DFT matrix.

use crate::diagnostics::{momentum_distribution, MomentumDistribution};
use crate::sawtooth::SawtoothParams;
use crate::scalar::{phase, Complex, Real};
use crate::tensor::{qubit_count, ComplexMatrix, DensityState};
use crate::{Error, Result};

/// Diagonal unitary stored as its phases `e^{iφ_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalUnitary<T> {
    entries: Vec<Complex<T>>,
}

impl<T: Real> DiagonalUnitary<T> {
    pub fn from_phases(phases: impl IntoIterator<Item = T>) -> Self {
        Self {
            entries: phases.into_iter().map(phase).collect(),
        }
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_diagonal(&self.entries)
    }
}

/// `F[j, idx] = e^{2πi·j·idx/N}/√N`; maps momentum amplitudes to position amplitudes.
pub fn build_qft<T: Real>(dim: usize) -> Result<ComplexMatrix<T>> {
    qubit_count(dim)?;
    let n = T::from_usize(dim).expect("small dimension");
    let norm = T::one() / n.sqrt();
    Ok(ComplexMatrix::from_fn(dim, dim, |j, idx| {
        // reduce j·idx mod N first so the phase stays exact for large registers
        let r = T::from_usize((j * idx) % dim).expect("small dimension");
        phase(T::TAU() * r / n) * norm
    }))
}

/// Free evolution `exp(−iT·m²/2)` in the momentum basis.
pub fn build_free_evolution<T: Real>(p: &SawtoothParams<T>) -> DiagonalUnitary<T> {
    let t = p.period();
    DiagonalUnitary::from_phases((0..p.dim()).map(|idx| {
        let m = T::from_i64(p.momentum_of(idx)).expect("small label");
        -t * m * m / T::lit(2.0)
    }))
}

/// Kick `exp(+ik(φ − π)²/2)` in the position basis, `φ_j = 2πj/N`.
pub fn build_kick<T: Real>(p: &SawtoothParams<T>) -> DiagonalUnitary<T> {
    let k = p.kick_strength();
    let n = T::from_usize(p.dim()).expect("small dimension");
    DiagonalUnitary::from_phases((0..p.dim()).map(|j| {
        let x = T::TAU() * T::from_usize(j).expect("small index") / n - T::PI();
        k * x * x / T::lit(2.0)
    }))
}

/// One map iteration `U_m·F⁻¹·U_φ·F`, or `F⁻¹·U_φ·F` when the free-evolution
/// factor is dropped for a final iteration.
pub fn build_sawtooth<T: Real>(p: &SawtoothParams<T>, include_final_free: bool) -> ComplexMatrix<T> {
    let f = build_qft::<T>(p.dim()).expect("power-of-two dimension");
    let mut u = f.adjoint().matmul(&build_kick(p).to_matrix()).matmul(&f);
    if include_final_free {
        u = build_free_evolution(p).to_matrix().matmul(&u);
    }
    u
}

/// Applies `ρ → UρU†` `t` times and returns the momentum distribution after
/// every iteration, starting with `t = 0`.
pub fn apply_iterations<T: Real>(
    rho0: &DensityState<T>,
    p: &SawtoothParams<T>,
    t: usize,
) -> Result<Vec<MomentumDistribution<T>>> {
    if rho0.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: rho0.dim(),
        });
    }
    let u = build_sawtooth(p, true);
    iterate_unitary(rho0, &u, t)
}

/// Momentum distributions of `ρ, UρU†, …` for `t` applications of `u`.
pub fn iterate_unitary<T: Real>(
    rho0: &DensityState<T>,
    u: &ComplexMatrix<T>,
    t: usize,
) -> Result<Vec<MomentumDistribution<T>>> {
    let mut rho = rho0.clone();
    let mut out = Vec::with_capacity(t + 1);
    out.push(momentum_distribution(&rho)?);
    for _ in 0..t {
        rho = rho.conjugate_by(u)?;
        out.push(momentum_distribution(&rho)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::tensor::testing::random_state;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// `⟨m|U|m′⟩ = Σ_j e^{−iTm²/2}·⟨m|φ_j⟩·e^{ik(φ_j−π)²/2}·⟨φ_j|m′⟩` with the
    /// overlap `⟨φ_j|m⟩ = e^{2πi·j(m + N/2)/N}/√N` written out directly.
    fn direct_sum(k_chaos: f64, l: u32, dim: usize) -> Vec<Vec<Complex<f64>>> {
        let n = dim as f64;
        let period = 2.0 * PI * l as f64 / n;
        let k = k_chaos / period;
        let overlap = |j: i64, m: i64| {
            let arg = 2.0 * PI * j as f64 * (m as f64 + n / 2.0) / n;
            c(arg.cos(), arg.sin()) / n.sqrt()
        };
        let half = (dim / 2) as i64;
        let mut out = vec![vec![c(0.0, 0.0); dim]; dim];
        for m in -half..half {
            for mp in -half..half {
                let mut acc = c(0.0, 0.0);
                for j in 0..dim as i64 {
                    let phi = 2.0 * PI * j as f64 / n;
                    let free = -period * (m * m) as f64 / 2.0;
                    let kick = k * (phi - PI) * (phi - PI) / 2.0;
                    acc += c(free.cos(), free.sin())
                        * overlap(j, m).conj()
                        * c(kick.cos(), kick.sin())
                        * overlap(j, mp);
                }
                out[(m + half) as usize][(mp + half) as usize] = acc;
            }
        }
        out
    }

    #[test]
    fn qft_first_column_and_moduli() {
        let f = build_qft::<f64>(8).unwrap();
        let inv = 1.0 / 8f64.sqrt();
        for j in 0..8 {
            assert_abs_diff_eq!(f[(j, 0)].re, inv, epsilon = 1e-15);
            assert_abs_diff_eq!(f[(j, 0)].im, 0.0, epsilon = 1e-15);
        }
        assert!(f.moduli().iter().all(|&x| (x - inv).abs() < 1e-15));
        assert!(f.unitarity_defect() < 1e-12);
        assert_eq!(build_qft::<f64>(6).unwrap_err(), Error::NotPowerOfTwo(6));
    }

    #[test]
    fn free_evolution_entries() {
        let p = SawtoothParams::<f64>::reference();
        let u = build_free_evolution(&p);
        assert_eq!(u.entries()[4], c(1.0, 0.0));
        let t = 2.0 * PI * 7.0 / 8.0;
        let expected = phase(-2.0 * t);
        assert!((u.entries()[6] - expected).norm() < 1e-13);
        assert!(u.entries().iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn kick_entries() {
        let p = SawtoothParams::<f64>::reference();
        let u = build_kick(&p);
        assert!((u.entries()[4] - c(1.0, 0.0)).norm() < 1e-15);
        let k = p.kick_strength();
        assert!((u.entries()[0] - phase(k * PI * PI / 2.0)).norm() < 1e-14);
        assert!(u.entries().iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn sawtooth_matches_direct_double_sum() {
        for (k, l, nq) in [(1.5, 7, 3), (-5.0, 3, 2), (0.7, 11, 4), (2.3, 5, 1)] {
            let p = SawtoothParams::<f64>::new(k, l, nq).unwrap();
            let u = build_sawtooth(&p, true);
            assert!(u.unitarity_defect() < 1e-12);
            let oracle = direct_sum(k, l, p.dim());
            for i in 0..p.dim() {
                for j in 0..p.dim() {
                    assert!((u[(i, j)] - oracle[i][j]).norm() < 1e-12, "({k},{l},{nq}) at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn dropping_free_evolution_keeps_populations() {
        let p = SawtoothParams::<f64>::reference();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rho = random_state(&mut rng, 8);
        let full = rho.conjugate_by(&build_sawtooth(&p, true)).unwrap();
        let partial = rho.conjugate_by(&build_sawtooth(&p, false)).unwrap();
        for (a, b) in full.populations().iter().zip(partial.populations()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn iterations_start_with_delta_and_conserve_probability() {
        let p = SawtoothParams::<f64>::reference();
        let rho = DensityState::basis(8, 4).unwrap();
        let ws = apply_iterations(&rho, &p, 40).unwrap();
        assert_eq!(ws.len(), 41);
        assert_eq!(ws[0].get(0), 1.0);
        for w in &ws {
            assert_abs_diff_eq!(w.total(), 1.0, epsilon = 1e-12);
        }
    }

    /// Brute force: amplitude vector iterated without density matrices.
    #[test]
    fn zero_momentum_stays_the_maximum() {
        let p = SawtoothParams::<f64>::reference();
        let u = build_sawtooth(&p, true);
        let mut psi = vec![c(0.0, 0.0); 8];
        psi[4] = c(1.0, 0.0);
        for _ in 1..=40 {
            psi = u.mul_vec(&psi);
            let w: Vec<f64> = psi.iter().map(|z| z.norm_sqr()).collect();
            assert!((0..8).filter(|&i| i != 4).all(|i| w[i] < w[4]));
        }
        let ws = apply_iterations(&DensityState::basis(8, 4).unwrap(), &p, 40).unwrap();
        for w in &ws[1..] {
            assert!(w.labels().filter(|&m| m != 0).all(|m| w.get(m) < w.get(0)));
        }
    }

    #[test]
    fn dimension_mismatch() {
        let p = SawtoothParams::<f64>::reference();
        assert!(apply_iterations(&DensityState::basis(4, 0).unwrap(), &p, 1).is_err());
    }
}
