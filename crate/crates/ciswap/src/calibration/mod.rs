//! Fabrication-error Monte Carlo and simplex search over circuit parameters.

mod monte_carlo;
mod nelder_mead;
mod search;

pub use monte_carlo::{
    draw_rng, monte_carlo_gate_fidelity, propagate_errors, propagate_gate_param_errors, propagate_quality_errors,
    sample_circuit_params, ErrorModel, ErrorSummary, FidelityDistribution, MonteCarloSample, ParamStats,
};
pub use nelder_mead::{nelder_mead, NelderMeadOptions, NelderMeadResult};
pub use search::{search_circuit_params, Candidate, SearchTargets, SearchWeights};
