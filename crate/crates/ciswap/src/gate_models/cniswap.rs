use num_complex::Complex;
use num_traits::Zero;

use super::{GateModelParams, PhaseSign};
use crate::quantum_core::{basis_bit, Operator};
use crate::{Error, Real, Result};

/// Qubit indices of T1 and T2 for `n` controls.
pub fn target_qubits(n_controls: usize) -> (usize, usize) {
    (n_controls, n_controls + 1)
}

fn zsign<T: Real>(index: usize, qubit: usize, n_qubits: usize) -> T {
    if basis_bit(index, qubit, n_qubits) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `−(Δ/2)σᶻ_T1 + Σ jzᵢ σᶻ_T1 σᶻᵢ + J^x(σ⁺_T1 σ⁻_T2 + h.c.)`.
pub fn interaction_hamiltonian<T: Real>(p: &GateModelParams<T>) -> Result<Operator<T>> {
    p.validate()?;
    let nq = p.n_qubits();
    let (t1, t2) = target_qubits(p.n_controls);
    let d = 1usize << nq;
    let swap_mask = (1usize << (nq - 1 - t1)) | (1usize << (nq - 1 - t2));
    let half = T::lit(0.5);
    let mut h = Operator::zeros(d);
    for b in 0..d {
        let z1 = zsign::<T>(b, t1, nq);
        let mut diag = -p.delta * half * z1;
        for (i, &jz) in p.jz.iter().enumerate() {
            diag += jz * z1 * zsign::<T>(b, i, nq);
        }
        h[(b, b)] = Complex::new(diag, T::zero());
        if basis_bit(b, t1, nq) != basis_bit(b, t2, nq) {
            h[(b ^ swap_mask, b)] = Complex::new(p.jx, T::zero());
        }
    }
    Ok(h)
}

/// Identity except on the all-ones control sector, where the target pair sees
/// `[[1,0,0,0],[0,cos a,s·sin a,0],[0,s·sin a,cos a,0],[0,0,0,1]]` with `s = phase.off_diagonal()`.
pub fn controlled_exchange<T: Real>(n_controls: usize, angle: T, phase: PhaseSign) -> Operator<T> {
    let (c, s) = (angle.cos(), angle.sin());
    exchange_block(n_controls, Complex::new(c, T::zero()), phase.off_diagonal::<T>() * s)
}

fn exchange_block<T: Real>(n_controls: usize, diag: Complex<T>, off: Complex<T>) -> Operator<T> {
    let d = 1usize << (n_controls + 2);
    let mut u = Operator::identity(d);
    let base = ((1usize << n_controls) - 1) << 2;
    u[(base | 0b01, base | 0b01)] = diag;
    u[(base | 0b10, base | 0b10)] = diag;
    u[(base | 0b01, base | 0b10)] = off;
    u[(base | 0b10, base | 0b01)] = off;
    u
}

pub fn ideal_cniswap<T: Real>(n_controls: usize, phase: PhaseSign) -> Operator<T> {
    exchange_block(n_controls, Complex::zero(), phase.off_diagonal())
}

pub fn ideal_sqrt_iswap<T: Real>(n_controls: usize) -> Operator<T> {
    let h = T::FRAC_1_SQRT_2();
    exchange_block(n_controls, Complex::new(h, T::zero()), Complex::new(T::zero(), -h))
}

/// Rotating-frame Hamiltonian after dropping every off-resonant exchange:
/// `J^x |1̃⟩⟨1̃|_C ⊗ (σ⁺σ⁻ + σ⁻σ⁺)`.
pub fn effective_hamiltonian<T: Real>(p: &GateModelParams<T>) -> Result<Operator<T>> {
    p.validate()?;
    let j = Complex::new(p.jx, T::zero());
    let mut h = Operator::zeros(1usize << p.n_qubits());
    let base = ((1usize << p.n_controls) - 1) << 2;
    h[(base | 0b01, base | 0b10)] = j;
    h[(base | 0b10, base | 0b01)] = j;
    Ok(h)
}

/// `exp(−i H_eff t)` in closed form; requires the resonance condition.
pub fn evolution_operator<T: Real>(p: &GateModelParams<T>, t: T) -> Result<Operator<T>> {
    p.validate()?;
    if !p.is_resonant(T::lit(1e-9).max(T::epsilon() * T::lit(16.0))) {
        return Err(Error::NotResonant(format!(
            "|Δ + 2Σjz| = {:.3e} rad/s",
            p.resonance_error().to_f64_lossy()
        )));
    }
    let a = p.jx * t;
    Ok(exchange_block(
        p.n_controls,
        Complex::new(a.cos(), T::zero()),
        Complex::new(T::zero(), -a.sin()),
    ))
}

