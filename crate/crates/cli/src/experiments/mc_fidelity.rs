use ciswap::calibration::{monte_carlo_gate_fidelity, ErrorModel};
use ciswap::circuit_quantization::{flux_from_fraction, CircuitParams};
use ciswap::dynamics::{FluxDrive, FluxSimOptions};
use ciswap::{MHZ, NS};
use serde::{Deserialize, Serialize};

use super::decoherence;
use crate::output::{fid, num, Artifacts};
use crate::{CliError, ExperimentConfig, RunArtifacts};

const DEFAULT_SAMPLES: usize = 500;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct McParams {
    row: usize,
    /// Static and modulated flux as fractions of the flux quantum.
    theta: f64,
    chi: f64,
    rel_sigma: f64,
    freq_sigma_mhz: f64,
    /// Fixed modulation frequency; omitted means each circuit is driven at its own resonance.
    omega_phi_ghz: Option<f64>,
    decoherence: bool,
    t1_us: f64,
    t2_us: f64,
    time_points: usize,
}

impl Default for McParams {
    fn default() -> Self {
        Self {
            row: 2,
            theta: 0.1,
            chi: 0.1,
            rel_sigma: 0.05,
            freq_sigma_mhz: 1.0,
            omega_phi_ghz: None,
            decoherence: false,
            t1_us: 30.0,
            t2_us: 30.0,
            time_points: 1,
        }
    }
}

#[derive(Serialize)]
struct McSummary {
    n_success: usize,
    n_failed: usize,
    nominal_fidelity: f64,
    gate_time_ns: f64,
    mean_fidelity: f64,
    fraction_above_0_99: f64,
    fraction_above_0_98: f64,
    quantiles: Vec<(f64, f64)>,
}

pub(crate) fn fig4_mc_fidelity(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let params: McParams = config.params()?;
    if !(1..=10).contains(&params.row) || params.time_points == 0 {
        return Err(CliError::Usage("need row in 1..=10 and time_points ≥ 1".into()));
    }
    let circuit = CircuitParams::reference(params.row)?;
    let em = ErrorModel {
        rel_sigma: params.rel_sigma,
        flux_freq_sigma: params.freq_sigma_mhz * MHZ,
        n_samples: config.samples_or(DEFAULT_SAMPLES),
        rng_seed: config.seed,
    };
    let drive = FluxDrive {
        theta: flux_from_fraction(params.theta),
        chi: flux_from_fraction(params.chi),
        omega_phi: params.omega_phi_ghz.map(|w| w * ciswap::GHZ),
    };
    let spec = if params.decoherence {
        Some(decoherence(circuit.n_controls() + 2, params.t1_us, params.t2_us)?)
    } else {
        None
    };
    let opts = FluxSimOptions { n_points: params.time_points, ..FluxSimOptions::default() };
    let dist = monte_carlo_gate_fidelity(&circuit, &em, &drive, spec.as_ref(), &opts)?;

    let rows: Vec<Vec<String>> = dist
        .samples
        .iter()
        .map(|s| vec![s.index.to_string(), num(s.omega_phi / ciswap::GHZ), fid(s.fidelity)])
        .collect();
    let mut out = Artifacts::new(config, &params)?;
    out.csv("fig4_mc_fidelity.csv", &["sample", "omega_phi_GHz", "fidelity"], &rows)?;
    if params.time_points > 1 {
        let mean = dist.mean_trajectory();
        let rows: Vec<Vec<String>> =
            dist.times.iter().zip(&mean).map(|(t, f)| vec![num(t / NS), fid(*f)]).collect();
        out.csv("fig4_mc_fidelity_time.csv", &["time_ns", "mean_fidelity"], &rows)?;
    }
    let quantiles = [0.05, 0.25, 0.5, 0.75, 0.95]
        .iter()
        .filter_map(|&q| dist.quantile(q).map(|v| (q, v)))
        .collect();
    out.summary(&McSummary {
        n_success: dist.samples.len(),
        n_failed: dist.failures.len(),
        nominal_fidelity: dist.nominal_fidelity,
        gate_time_ns: dist.gate_time / NS,
        mean_fidelity: dist.mean(),
        fraction_above_0_99: dist.fraction_above(0.99),
        fraction_above_0_98: dist.fraction_above(0.98),
        quantiles,
    })?;
    Ok(RunArtifacts { files: out.files })
}
