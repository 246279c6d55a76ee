use num_complex::Complex;

use super::SwapArrayParams;
use crate::quantum_core::{basis_bit, matrix_exp, Operator};
use crate::{Error, Real, Result};

/// `−Σ[(ω + Δᵢ)/2 σᶻ_Ti + ω_Ci/2 σᶻ_Ci] + Σ jzᵢ σᶻ_Ti σᶻ_Ci + J^x Σ_{i<j} σˣ_Ti σˣ_Tj`
/// on qubits `[C1..Cn, T1..Tn]`.
pub fn swap_array_hamiltonian<T: Real>(p: &SwapArrayParams<T>) -> Result<Operator<T>> {
    p.validate()?;
    let n = p.n_targets;
    let nq = 2 * n;
    let d = 1usize << nq;
    let half = T::lit(0.5);
    let z = |b: usize, q: usize| if basis_bit(b, q, nq) == 0 { T::one() } else { -T::one() };
    let mut h = Operator::zeros(d);
    for b in 0..d {
        let mut diag = T::zero();
        for i in 0..n {
            let (zc, zt) = (z(b, i), z(b, n + i));
            diag -= (p.omega_bar + p.detunings[i]) * half * zt + p.control_freqs[i] * half * zc;
            diag += p.jz[i] * zt * zc;
        }
        h[(b, b)] = Complex::new(diag, T::zero());
        for i in 0..n {
            for j in (i + 1)..n {
                let mask = (1usize << (nq - 1 - (n + i))) | (1usize << (nq - 1 - (n + j)));
                h[(b ^ mask, b)] += Complex::new(p.jx, T::zero());
            }
        }
    }
    Ok(h)
}

/// Excitation-conserving exchange `J^x Σ_{i<j ∈ active} (σ⁺ᵢσ⁻ⱼ + h.c.)` on `n_targets` qubits.
pub fn exchange_hamiltonian<T: Real>(n_targets: usize, active: &[usize], jx: T) -> Operator<T> {
    let d = 1usize << n_targets;
    let mut h = Operator::zeros(d);
    for b in 0..d {
        for (a, &i) in active.iter().enumerate() {
            for &j in &active[a + 1..] {
                if basis_bit(b, i, n_targets) != basis_bit(b, j, n_targets) {
                    let mask = (1usize << (n_targets - 1 - i)) | (1usize << (n_targets - 1 - j));
                    h[(b ^ mask, b)] = Complex::new(jx, T::zero());
                }
            }
        }
    }
    h
}

/// Ideal controlled swap-array unitary: on control pattern `c` the targets whose
/// control reads `|1⟩` exchange under `exp(−i t H_exchange)`; one or zero active
/// targets leave the sector untouched.
pub fn swap_array_ideal_unitary<T: Real>(n: usize, t: T, jx: T) -> Result<Operator<T>> {
    if !(n == 3 || n == 4) {
        return Err(Error::InvalidParameter(format!("swap array unitary supports n = 3 or 4, got {n}")));
    }
    if t < T::zero() {
        return Err(Error::InvalidParameter("negative time".into()));
    }
    let dt = 1usize << n;
    let mut u = Operator::zeros(dt * dt);
    for control in 0..dt {
        let active: Vec<usize> = (0..n).filter(|&i| basis_bit(control, i, n) == 1).collect();
        let block = if active.len() < 2 {
            Operator::identity(dt)
        } else {
            let h = exchange_hamiltonian(n, &active, jx);
            matrix_exp(&h.scale(Complex::new(T::zero(), -t)))?
        };
        let base = control * dt;
        for i in 0..dt {
            for j in 0..dt {
                u[(base + i, base + j)] = block[(i, j)];
            }
        }
    }
    Ok(u)
}

/// Closed-form three-target block on the one- (or two-) excitation subspace:
/// `(1/3)e^{−iJt/2}` times `3cos(3Jt/2) + i sin(3Jt/2)` on the diagonal and
/// `−2i sin(3Jt/2)` off it.
pub fn three_way_block<T: Real>(t: T, jx: T) -> Operator<T> {
    let x = jx * t * T::lit(0.5);
    let pre = Complex::new(T::zero(), -x).exp() / T::lit(3.0);
    let (c3, s3) = ((T::lit(3.0) * x).cos(), (T::lit(3.0) * x).sin());
    let diag = pre * Complex::new(T::lit(3.0) * c3, s3);
    let off = pre * Complex::new(T::zero(), -T::lit(2.0) * s3);
    Operator::from_fn(3, |i, j| if i == j { diag } else { off })
}

/// Full 8×8 three-target swap in the computational basis of the targets.
pub fn three_way_swap<T: Real>(t: T, jx: T) -> Operator<T> {
    let block = three_way_block(t, jx);
    let one = [0b100usize, 0b010, 0b001];
    let two = [0b011usize, 0b101, 0b110];
    let mut u = Operator::zeros(8);
    u[(0, 0)] = Complex::new(T::one(), T::zero());
    u[(7, 7)] = Complex::new(T::one(), T::zero());
    for sector in [one, two] {
        for (a, &i) in sector.iter().enumerate() {
            for (b, &j) in sector.iter().enumerate() {
                u[(i, j)] = block[(a, b)];
            }
        }
    }
    u
}
