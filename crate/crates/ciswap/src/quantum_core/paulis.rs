use num_complex::Complex;
use num_traits::{One, Zero};

use super::{c, Operator};
use crate::Real;

pub fn identity2<T: Real>() -> Operator<T> {
    Operator::identity(2)
}

pub fn sigma_x<T: Real>() -> Operator<T> {
    Operator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2")
}

pub fn sigma_y<T: Real>() -> Operator<T> {
    Operator::from_rows(&[vec![Complex::zero(), c(0.0, -1.0)], vec![c(0.0, 1.0), Complex::zero()]])
        .expect("2x2")
}

pub fn sigma_z<T: Real>() -> Operator<T> {
    Operator::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).expect("2x2")
}

/// `|1⟩⟨0|`.
pub fn sigma_plus<T: Real>() -> Operator<T> {
    Operator::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).expect("2x2")
}

/// `|0⟩⟨1|`, the relaxation operator.
pub fn sigma_minus<T: Real>() -> Operator<T> {
    Operator::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).expect("2x2")
}

pub fn projector<T: Real>(bit: usize) -> Operator<T> {
    let mut p = Operator::zeros(2);
    p[(bit, bit)] = Complex::one();
    p
}

pub fn hadamard<T: Real>() -> Operator<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Operator::from_real_rows(&[&[h, h], &[h, -h]]).expect("2x2")
}

/// Bit of `qubit` in basis index `index` for an `n_qubits` register.
pub fn basis_bit(index: usize, qubit: usize, n_qubits: usize) -> usize {
    (index >> (n_qubits - 1 - qubit)) & 1
}

/// Lifts a single-qubit operator to act on `qubit` of an `n_qubits` register.
pub fn embed<T: Real>(op: &Operator<T>, qubit: usize, n_qubits: usize) -> Operator<T> {
    embed_many(&[(qubit, op)], n_qubits)
}

/// Tensor product placing each listed single-qubit operator on its qubit.
pub fn embed_many<T: Real>(ops: &[(usize, &Operator<T>)], n_qubits: usize) -> Operator<T> {
    let mut acc = Operator::identity(1);
    for q in 0..n_qubits {
        let factor = ops
            .iter()
            .find(|(k, _)| *k == q)
            .map(|(_, o)| (*o).clone())
            .unwrap_or_else(identity2);
        acc = acc.kron(&factor);
    }
    acc
}
