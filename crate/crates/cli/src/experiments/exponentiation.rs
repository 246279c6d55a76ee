use ciswap::exponentiation::{outcome_label, plus_basis_probabilities, run_exponentiation_circuit};
use ciswap::gate_models::{ideal_cniswap, PhaseSign};
use ciswap::quantum_core::haar_random_state;
use ciswap::{CyclicGate, PureState};
use serde::{Deserialize, Serialize};

use crate::output::{fid, num, Artifacts};
use crate::{CliError, ExperimentConfig, RunArtifacts};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ExpParams {
    theta_min: f64,
    theta_max: f64,
    n_points: usize,
}

impl Default for ExpParams {
    fn default() -> Self {
        Self { theta_min: 0.0, theta_max: 3.0, n_points: 31 }
    }
}

#[derive(Serialize)]
struct ExpSummary {
    /// Largest deviation between the closed form and the simulated iSWAP circuit on `|00⟩`.
    max_closed_form_deviation: f64,
    /// All-plus probability at each θ for a seeded random input state.
    random_input_success: Vec<(f64, f64)>,
}

pub(crate) fn fig6_exponentiation(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let params: ExpParams = config.params()?;
    if params.n_points < 2 || !(params.theta_max > params.theta_min) {
        return Err(CliError::Usage("need n_points ≥ 2 and theta_max > theta_min".into()));
    }
    let gate = CyclicGate::with_order(ideal_cniswap(0, PhaseSign::MinusI), 4)?;
    let fixed = PureState::basis(4, 0);
    let random = haar_random_state(4, config.seed)?;
    let mut header = vec!["theta".to_string()];
    header.extend((0..8).map(|s| format!("p_{}", outcome_label(s, 3))));
    let mut rows = Vec::new();
    let mut summary = ExpSummary { max_closed_form_deviation: 0.0, random_input_success: Vec::new() };
    for k in 0..params.n_points {
        let theta = params.theta_min + (params.theta_max - params.theta_min) * k as f64 / (params.n_points - 1) as f64;
        let closed = plus_basis_probabilities(theta);
        let simulated = run_exponentiation_circuit(&gate, theta, &fixed)?;
        for (a, b) in closed.iter().zip(&simulated.probabilities) {
            summary.max_closed_form_deviation = summary.max_closed_form_deviation.max((a - b).abs());
        }
        let success = run_exponentiation_circuit(&gate, theta, &random)?.success_probability();
        summary.random_input_success.push((theta, success));
        rows.push(std::iter::once(num(theta)).chain(closed.iter().map(|p| fid(*p))).collect());
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut out = Artifacts::new(config, &params)?;
    out.csv("fig6_exponentiation.csv", &header, &rows)?;
    out.summary(&summary)?;
    Ok(RunArtifacts { files: out.files })
}
