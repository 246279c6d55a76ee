use num_complex::Complex64;

use super::channel::{average_gate_fidelity, unitary_average_fidelity};
use super::decoherence::{collapse_operators, DecoherenceSpec};
use super::liouvillian::Liouvillian;
use crate::gate_models::{
    ideal_cniswap, interaction_hamiltonian, swap_array_hamiltonian, swap_array_ideal_unitary,
};
use crate::quantum_core::matrix_exp;
use crate::{Error, GateModelParams, Operator, Result, SwapArrayParams};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateSimulation {
    pub fidelity: f64,
    pub gate_time: f64,
}

/// Evolves under the time-independent `h` for `t`, moves to the frame rotating with
/// the diagonal of `h` and scores the resulting process against `target`.
pub fn gate_fidelity(h: &Operator, t: f64, target: &Operator, collapse: &[Operator]) -> Result<f64> {
    let phases: Vec<Complex64> = h.diag().iter().map(|e| Complex64::from_polar(1.0, e.re * t)).collect();
    if collapse.is_empty() {
        let u = matrix_exp(&h.scale(Complex64::new(0.0, -t)))?;
        let d = u.dim();
        let framed = Operator::from_fn(d, |i, j| phases[i] * u[(i, j)]);
        unitary_average_fidelity(&framed, target)
    } else {
        let channel = Liouvillian::new(h, collapse)?.propagator(t)?.then_diagonal(&phases);
        average_gate_fidelity(&channel, target)
    }
}

fn collapse_for(n_qubits: usize, spec: Option<&DecoherenceSpec>) -> Result<Vec<Operator>> {
    match spec {
        Some(s) => collapse_operators(n_qubits, s),
        None => Ok(Vec::new()),
    }
}

/// Exact interaction-picture simulation scored against the ideal CⁿiSWAP at `π/(2|J^x|)`.
pub fn simulate_cniswap(p: &GateModelParams, spec: Option<&DecoherenceSpec>) -> Result<GateSimulation> {
    if !p.is_resonant(1e-9) {
        return Err(Error::NotResonant(format!("|Δ + 2Σjz| = {:.3e} rad/s", p.resonance_error())));
    }
    let h = interaction_hamiltonian(p)?;
    let gate_time = p.gate_time();
    let target = ideal_cniswap(p.n_controls, p.phase_sign);
    let collapse = collapse_for(p.n_qubits(), spec)?;
    let fidelity = gate_fidelity(&h, gate_time, &target, &collapse).map_err(|e| e.at("simulate_cniswap"))?;
    Ok(GateSimulation { fidelity, gate_time })
}

/// Swap array evolved for `π/(2|J^x|)` and scored against the ideal block unitary.
pub fn simulate_swap_array(p: &SwapArrayParams, spec: Option<&DecoherenceSpec>) -> Result<f64> {
    if !p.is_resonant(1e-9) {
        return Err(Error::NotResonant("detunings must equal −2·jz per target".into()));
    }
    let t = p.gate_time();
    let target = swap_array_ideal_unitary(p.n_targets, t, p.jx)?;
    simulate_swap_array_at(p, t, &target, spec)
}

pub fn simulate_swap_array_at(
    p: &SwapArrayParams,
    t: f64,
    target: &Operator,
    spec: Option<&DecoherenceSpec>,
) -> Result<f64> {
    let h = swap_array_hamiltonian(p)?;
    let collapse = collapse_for(2 * p.n_targets, spec)?;
    gate_fidelity(&h, t, target, &collapse).map_err(|e| e.at("simulate_swap_array"))
}
