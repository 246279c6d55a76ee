use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::ode::{integrate, OdeOptions};
use crate::{DensityMatrix, Error, Operator, Result};

/// Hermitian `op` scaled by a real envelope.
#[derive(Clone)]
pub struct Drive {
    pub op: Operator,
    pub envelope: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for Drive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Drive").field("op", &self.op).finish_non_exhaustive()
    }
}

/// `H(t) = base + Σ envelope_k(t)·op_k`.
#[derive(Clone, Debug)]
pub struct TimeDependentHamiltonian {
    pub base: Operator,
    pub drives: Vec<Drive>,
}

impl TimeDependentHamiltonian {
    pub fn constant(base: Operator) -> Self {
        Self { base, drives: Vec::new() }
    }

    pub fn with_drive(mut self, op: Operator, envelope: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.drives.push(Drive { op, envelope: Arc::new(envelope) });
        self
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn at(&self, t: f64) -> Operator {
        let mut h = self.base.clone();
        for drive in &self.drives {
            let s = (drive.envelope)(t);
            if s != 0.0 {
                h += &drive.op.scale_real(s);
            }
        }
        h
    }

    pub fn validate(&self) -> Result<()> {
        let tol = 1e-9 * self.base.frobenius_norm().max(1.0);
        if self.base.hermiticity_error() > tol || self.drives.iter().any(|d| d.op.dim() != self.dim() || d.op.hermiticity_error() > tol) {
            return Err(Error::InvalidParameter("Hamiltonian terms must be Hermitian and share a dimension".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
}

pub(crate) struct LindbladRhs {
    dim: usize,
    collapse: Vec<(Operator, Operator)>,
    half_decay: Operator,
}

impl LindbladRhs {
    pub(crate) fn new(dim: usize, collapse: &[Operator]) -> Result<Self> {
        if collapse.iter().any(|l| l.dim() != dim) {
            return Err(Error::Dimension("collapse operator dimension".into()));
        }
        let mut half_decay = Operator::zeros(dim);
        for l in collapse {
            half_decay += &l.adjoint().matmul(l).scale_real(0.5);
        }
        let collapse = collapse.iter().map(|l| (l.clone(), l.adjoint())).collect();
        Ok(Self { dim, collapse, half_decay })
    }

    /// `out = −i[H, ρ] + D(ρ)` on a row-major flattened `ρ`.
    pub(crate) fn eval(&self, h: &Operator, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        let rho = Operator::from_vec(d, rho.to_vec()).expect("state length");
        let k = &h.scale(Complex64::new(0.0, -1.0)) - &self.half_decay;
        let mut acc = k.matmul(&rho);
        acc += &rho.matmul(&k.adjoint());
        for (l, l_adj) in &self.collapse {
            acc += &l.matmul(&rho).matmul(l_adj);
        }
        out.copy_from_slice(acc.data());
    }
}

/// Evolves arbitrary `inputs` (not necessarily states) to each output time.
pub(crate) fn evolve_operators(
    h: &TimeDependentHamiltonian,
    collapse: &[Operator],
    inputs: &[Operator],
    times: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<Vec<Operator>>> {
    let d = h.dim();
    let rhs = LindbladRhs::new(d, collapse)?;
    let mut per_time: Vec<Vec<Operator>> = vec![Vec::with_capacity(inputs.len()); times.len()];
    for input in inputs {
        if input.dim() != d {
            return Err(Error::Dimension("initial operator dimension".into()));
        }
        let sol = integrate(|t, y, dy| rhs.eval(&h.at(t), y, dy), 0.0, input.data(), times, opts)?;
        for (slot, y) in per_time.iter_mut().zip(sol) {
            slot.push(Operator::from_vec(d, y)?);
        }
    }
    Ok(per_time)
}

fn output_times(t_final: f64, dt_ctrl: f64) -> Result<Vec<f64>> {
    if !(t_final >= 0.0) || !(dt_ctrl > 0.0) {
        return Err(Error::InvalidParameter("t_final must be ≥ 0 and dt_ctrl > 0".into()));
    }
    let steps = (t_final / dt_ctrl - 1e-9).ceil().max(0.0) as usize;
    let mut times: Vec<f64> = (0..steps).map(|k| k as f64 * dt_ctrl).collect();
    times.push(t_final);
    Ok(times)
}

/// Master-equation trajectory sampled every `dt_ctrl` and at `t_final`.
pub fn lindblad_evolve(
    h: &TimeDependentHamiltonian,
    rho0: &DensityMatrix,
    collapse: &[Operator],
    t_final: f64,
    dt_ctrl: f64,
) -> Result<Trajectory> {
    h.validate()?;
    if rho0.dim() != h.dim() {
        return Err(Error::Dimension(format!("state {} vs Hamiltonian {}", rho0.dim(), h.dim())));
    }
    let times = output_times(t_final, dt_ctrl)?;
    let evolved = evolve_operators(h, collapse, &[rho0.as_operator().clone()], &times, &OdeOptions::default())?;
    let states = evolved
        .into_iter()
        .map(|mut v| DensityMatrix::from_operator_unchecked(v.remove(0)))
        .collect();
    Ok(Trajectory { times, states })
}

/// `ρ(t) ↦ U(t)ρ(t)U(t)†` with `U(t) = exp(i·H_diag·t)`.
pub fn rotating_frame(result: &Trajectory, h_diag: &Operator) -> Result<Trajectory> {
    if !h_diag.is_diagonal(0.0) {
        return Err(Error::NotDiagonal);
    }
    let energies: Vec<f64> = h_diag.diag().iter().map(|z| z.re).collect();
    let states = result
        .times
        .iter()
        .zip(&result.states)
        .map(|(&t, rho)| {
            let phases: Vec<Complex64> = energies.iter().map(|&e| Complex64::from_polar(1.0, e * t)).collect();
            let op = rho.as_operator();
            DensityMatrix::from_operator_unchecked(Operator::from_fn(op.dim(), |i, j| {
                phases[i] * op[(i, j)] * phases[j].conj()
            }))
        })
        .collect();
    Ok(Trajectory { times: result.times.clone(), states })
}
