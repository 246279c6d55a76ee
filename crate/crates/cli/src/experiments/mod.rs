mod circuits;
mod exponentiation;
mod gate_sweeps;
mod mc_fidelity;

use ciswap::dynamics::DecoherenceSpec;
use ciswap::US;

use crate::{CliError, ExperimentConfig, RunArtifacts};

#[derive(Clone, Copy)]
pub struct ExperimentInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub(crate) run: fn(&ExperimentConfig) -> Result<RunArtifacts, CliError>,
}

impl std::fmt::Debug for ExperimentInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExperimentInfo").field("name", &self.name).field("description", &self.description).finish()
    }
}

pub fn list_experiments() -> Vec<ExperimentInfo> {
    vec![
        ExperimentInfo {
            name: "fig1_jx_sweep",
            description: "single-control CiSWAP fidelity and gate time versus exchange coupling",
            run: gate_sweeps::fig1_jx_sweep,
        },
        ExperimentInfo {
            name: "fig2_control_sweep",
            description: "CⁿiSWAP fidelity versus number of controls at fixed coupling ratios",
            run: gate_sweeps::fig2_control_sweep,
        },
        ExperimentInfo {
            name: "table2_derive",
            description: "gate parameters with Monte Carlo error bars for the reference circuits",
            run: circuits::table2_derive,
        },
        ExperimentInfo {
            name: "table3_quality",
            description: "anharmonicities and E^J/E^C with Monte Carlo error bars for the reference circuits",
            run: circuits::table3_quality,
        },
        ExperimentInfo {
            name: "fig3_flux_derivatives",
            description: "flux derivatives of the dressed exchange and target frequencies with error bands",
            run: circuits::fig3_flux_derivatives,
        },
        ExperimentInfo {
            name: "fig4_mc_fidelity",
            description: "distribution of flux-driven gate fidelities under fabrication and drive errors",
            run: mc_fidelity::fig4_mc_fidelity,
        },
        ExperimentInfo {
            name: "sec4_swap_array",
            description: "three-target controlled swap array fidelity with and without decoherence",
            run: gate_sweeps::sec4_swap_array,
        },
        ExperimentInfo {
            name: "fig6_exponentiation",
            description: "±-basis outcome probabilities of the order-four exponentiation circuit versus θ",
            run: exponentiation::fig6_exponentiation,
        },
    ]
}

pub(crate) fn decoherence(n_qubits: usize, t1_us: f64, t2_us: f64) -> Result<DecoherenceSpec, CliError> {
    let spec = DecoherenceSpec::uniform(n_qubits, t1_us * US, t2_us * US);
    spec.validate()?;
    Ok(spec)
}
