//! Gate-level realization of the map: QFT circuit plus diagonal operators
//! decomposed into z-rotations and controlled-phase gates.
//!
//! Qubit `q` is bit `q` of the computational index (`q = 0` is least
//! significant). Global phases are kept as explicit gates so circuit products
//! equal the target matrices exactly, not merely up to phase.

use serde::{Deserialize, Serialize};

use crate::sawtooth::SawtoothParams;
use crate::scalar::{c, cre, phase, Complex, Real};
use crate::tensor::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "kebab-case")]
pub enum Gate<T> {
    /// `diag(e^{−iθ/2}, e^{iθ/2})` on one qubit.
    Rz { qubit: usize, angle: T },
    /// `e^{iθ}` when both qubits are 1.
    ControlledPhase { control: usize, target: usize, angle: T },
    GlobalPhase { angle: T },
    Hadamard { qubit: usize },
    Swap { a: usize, b: usize },
}

impl<T: Real> Gate<T> {
    pub fn inverse(&self) -> Self {
        match *self {
            Gate::Rz { qubit, angle } => Gate::Rz { qubit, angle: -angle },
            Gate::ControlledPhase { control, target, angle } => Gate::ControlledPhase {
                control,
                target,
                angle: -angle,
            },
            Gate::GlobalPhase { angle } => Gate::GlobalPhase { angle: -angle },
            g @ (Gate::Hadamard { .. } | Gate::Swap { .. }) => g,
        }
    }

    /// Applies the gate in place to an amplitude vector of length `2^n`.
    pub fn apply(&self, psi: &mut [Complex<T>]) {
        let bit = |x: usize, q: usize| (x >> q) & 1;
        match *self {
            Gate::Rz { qubit, angle } => {
                let lo = phase(-angle / T::lit(2.0));
                let hi = phase(angle / T::lit(2.0));
                for (x, a) in psi.iter_mut().enumerate() {
                    *a *= if bit(x, qubit) == 0 { lo } else { hi };
                }
            }
            Gate::ControlledPhase { control, target, angle } => {
                let ph = phase(angle);
                for (x, a) in psi.iter_mut().enumerate() {
                    if bit(x, control) == 1 && bit(x, target) == 1 {
                        *a *= ph;
                    }
                }
            }
            Gate::GlobalPhase { angle } => {
                let ph = phase(angle);
                psi.iter_mut().for_each(|a| *a *= ph);
            }
            Gate::Hadamard { qubit } => {
                let s = T::FRAC_1_SQRT_2();
                let mask = 1 << qubit;
                for x in 0..psi.len() {
                    if x & mask == 0 {
                        let (a0, a1) = (psi[x], psi[x | mask]);
                        psi[x] = (a0 + a1) * s;
                        psi[x | mask] = (a0 - a1) * s;
                    }
                }
            }
            Gate::Swap { a, b } => {
                for x in 0..psi.len() {
                    if bit(x, a) == 0 && bit(x, b) == 1 {
                        let y = x ^ (1 << a) ^ (1 << b);
                        psi.swap(x, y);
                    }
                }
            }
        }
    }
}

/// Ordered gate sequence; the first gate acts first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateList<T> {
    pub n_qubits: usize,
    pub gates: Vec<Gate<T>>,
}

impl<T: Real> GateList<T> {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate<T>) {
        self.gates.push(g);
    }

    /// Appends `other` so that it acts after `self`.
    pub fn then(mut self, other: GateList<T>) -> Self {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.gates.extend(other.gates);
        self
    }

    pub fn inverse(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn apply(&self, psi: &mut [Complex<T>]) {
        for g in &self.gates {
            g.apply(psi);
        }
    }

    /// Product of all gate matrices.
    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        let dim = 1usize << self.n_qubits;
        let mut u = ComplexMatrix::zeros(dim, dim);
        let mut col = vec![c(T::zero(), T::zero()); dim];
        for x in 0..dim {
            col.iter_mut().for_each(|a| *a = c(T::zero(), T::zero()));
            col[x] = cre(T::one());
            self.apply(&mut col);
            for (y, &a) in col.iter().enumerate() {
                u[(y, x)] = a;
            }
        }
        u
    }
}

/// Diagonal phase `a·x² + b·x + c` over labels `x = idx + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticPhase<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub shift: T,
}

impl<T: Real> QuadraticPhase<T> {
    pub fn zero() -> Self {
        Self {
            a: T::zero(),
            b: T::zero(),
            c: T::zero(),
            shift: T::zero(),
        }
    }

    /// `−T·m²/2` with `m = idx − N/2`.
    pub fn free_evolution(p: &SawtoothParams<T>) -> Self {
        Self {
            a: -p.period() / T::lit(2.0),
            b: T::zero(),
            c: T::zero(),
            shift: -half_dim(p),
        }
    }

    /// `k(φ − π)²/2` with `φ = 2πj/N`, i.e. `(k/2)(2π/N)²·(j − N/2)²`.
    pub fn kick(p: &SawtoothParams<T>) -> Self {
        let step = T::TAU() / T::from_usize(p.dim()).expect("small dimension");
        Self {
            a: p.kick_strength() / T::lit(2.0) * step * step,
            b: T::zero(),
            c: T::zero(),
            shift: -half_dim(p),
        }
    }

    pub fn at(&self, idx: usize) -> T {
        let x = T::from_usize(idx).expect("small index") + self.shift;
        self.a * x * x + self.b * x + self.c
    }
}

fn half_dim<T: Real>(p: &SawtoothParams<T>) -> T {
    T::from_usize(p.dim() / 2).expect("small dimension")
}

/// Expands the diagonal `e^{i·phase(idx)}` over the bits of `idx`.
///
/// In the index `A·idx² + B·idx + C` with `idx = Σ 2^i b_i` and `b_i² = b_i`,
/// bit `i` carries `A·4^i + B·2^i` (a z-rotation plus half that as global
/// phase) and each pair `i < j` carries `2A·2^{i+j}` (a controlled phase).
pub fn decompose_diagonal<T: Real>(form: &QuadraticPhase<T>, n_qubits: usize) -> GateList<T> {
    let two = T::lit(2.0);
    let a = form.a;
    let b = two * form.a * form.shift + form.b;
    let c0 = form.a * form.shift * form.shift + form.b * form.shift + form.c;
    let pow2 = |e: usize| T::from_u64(1u64 << e).expect("small power");

    let bit_angles: Vec<T> = (0..n_qubits).map(|i| a * pow2(2 * i) + b * pow2(i)).collect();
    let global = bit_angles.iter().fold(c0, |acc, &th| acc + th / two);

    let mut list = GateList::new(n_qubits);
    if global != T::zero() {
        list.push(Gate::GlobalPhase { angle: global });
    }
    for (qubit, &angle) in bit_angles.iter().enumerate() {
        if angle != T::zero() {
            list.push(Gate::Rz { qubit, angle });
        }
    }
    for i in 0..n_qubits {
        for j in (i + 1)..n_qubits {
            let angle = two * a * pow2(i + j);
            if angle != T::zero() {
                list.push(Gate::ControlledPhase {
                    control: i,
                    target: j,
                    angle,
                });
            }
        }
    }
    list
}

/// Textbook QFT: Hadamard and controlled phases from the most significant
/// bit down, then a bit reversal. The product is `F[y, x] = e^{2πi·xy/N}/√N`.
pub fn qft_circuit<T: Real>(n_qubits: usize) -> GateList<T> {
    let mut list = GateList::new(n_qubits);
    for target in (0..n_qubits).rev() {
        list.push(Gate::Hadamard { qubit: target });
        for control in (0..target).rev() {
            let denom = T::from_u64(1u64 << (target - control)).expect("small power");
            list.push(Gate::ControlledPhase {
                control,
                target,
                angle: T::PI() / denom,
            });
        }
    }
    for q in 0..n_qubits / 2 {
        list.push(Gate::Swap {
            a: q,
            b: n_qubits - 1 - q,
        });
    }
    list
}

/// One map iteration as gates: QFT, kick, inverse QFT, then free evolution
/// unless it is dropped for a final iteration.
pub fn sawtooth_circuit<T: Real>(p: &SawtoothParams<T>, include_final_free: bool) -> GateList<T> {
    let n = p.n_qubits();
    let qft = qft_circuit::<T>(n);
    let mut list = qft
        .clone()
        .then(decompose_diagonal(&QuadraticPhase::kick(p), n))
        .then(qft.inverse());
    if include_final_free {
        list = list.then(decompose_diagonal(&QuadraticPhase::free_evolution(p), n));
    }
    list
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sawtooth::{build_free_evolution, build_kick, build_qft, build_sawtooth};

    fn trace_fidelity(a: &ComplexMatrix<f64>, b: &ComplexMatrix<f64>) -> f64 {
        a.adjoint().matmul(b).trace().norm() / a.rows() as f64
    }

    #[test]
    fn zero_phase_is_empty() {
        assert!(decompose_diagonal(&QuadraticPhase::<f64>::zero(), 3).is_empty());
    }

    #[test]
    fn free_evolution_circuit_matches_diagonal() {
        let p = SawtoothParams::<f64>::reference();
        let circ = decompose_diagonal(&QuadraticPhase::free_evolution(&p), 3).to_matrix();
        let direct = build_free_evolution(&p).to_matrix();
        assert!(circ.max_abs_diff(&direct) < 1e-10);
        assert!((trace_fidelity(&circ, &direct) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kick_circuit_matches_diagonal() {
        let p = SawtoothParams::<f64>::reference();
        let circ = decompose_diagonal(&QuadraticPhase::kick(&p), 3).to_matrix();
        assert!(circ.max_abs_diff(&build_kick(&p).to_matrix()) < 1e-10);
    }

    #[test]
    fn arbitrary_quadratic_form() {
        let form = QuadraticPhase {
            a: 0.37,
            b: -1.2,
            c: 0.4,
            shift: -3.5,
        };
        let circ = decompose_diagonal(&form, 4).to_matrix();
        for idx in 0..16 {
            assert!((circ[(idx, idx)] - phase(form.at(idx))).norm() < 1e-10);
        }
    }

    #[test]
    fn single_qubit_qft_is_hadamard() {
        let list = qft_circuit::<f64>(1);
        assert_eq!(list.gates, vec![Gate::Hadamard { qubit: 0 }]);
        assert!(list.to_matrix().max_abs_diff(&build_qft(2).unwrap()) < 1e-15);
    }

    #[test]
    fn qft_circuit_matches_dft() {
        for n in 1..=6 {
            let circ = qft_circuit::<f64>(n).to_matrix();
            assert!(circ.max_abs_diff(&build_qft(1 << n).unwrap()) < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn qft_gate_count_is_quadratic() {
        for n in 1..=8 {
            let expected = n + n * (n - 1) / 2 + n / 2;
            assert_eq!(qft_circuit::<f64>(n).len(), expected);
        }
    }

    #[test]
    fn full_iteration_matches_matrix() {
        for (k, l, nq) in [(1.5, 7, 3), (0.4, 3, 4), (-6.0, 2, 2)] {
            let p = SawtoothParams::<f64>::new(k, l, nq).unwrap();
            for include in [true, false] {
                let circ = sawtooth_circuit(&p, include).to_matrix();
                let direct = build_sawtooth(&p, include);
                assert!(circ.max_abs_diff(&direct) < 1e-10);
                assert!((trace_fidelity(&circ, &direct) - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn inverse_undoes_list() {
        let p = SawtoothParams::<f64>::reference();
        let list = sawtooth_circuit(&p, true);
        let prod = list.clone().then(list.inverse()).to_matrix();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-12);
    }

    #[test]
    fn swap_gate() {
        let mut psi = vec![c(0.0, 0.0); 4];
        psi[1] = c(1.0, 0.0); // bit 0 set
        Gate::Swap { a: 0, b: 1 }.apply(&mut psi);
        assert_eq!(psi[2], c(1.0, 0.0));
    }
}
