use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::circuit_quantization::{gate_params_from_circuit, quality_metrics, CircuitParams, DerivedGateParams};
use crate::dynamics::{
    simulate_flux_driven_gate, DecoherenceSpec, FluxDrive, FluxGateModel, FluxGateTrajectory, FluxSimOptions,
};
use crate::{Error, Result, MHZ};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    /// Relative standard deviation applied to every circuit element.
    pub rel_sigma: f64,
    /// Absolute standard deviation of the modulation frequency, rad/s.
    pub flux_freq_sigma: f64,
    pub n_samples: usize,
    pub rng_seed: u64,
}

impl Default for ErrorModel {
    fn default() -> Self {
        Self { rel_sigma: 0.05, flux_freq_sigma: MHZ, n_samples: 1000, rng_seed: 0 }
    }
}

impl ErrorModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_sigma >= 0.0) || !(self.flux_freq_sigma >= 0.0) {
            return Err(Error::InvalidParameter("error model standard deviations must be non-negative".into()));
        }
        if self.n_samples == 0 {
            return Err(Error::InvalidParameter("n_samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// Independent generator for draw `index` under `seed`.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn perturb(nominal: &CircuitParams, rel_sigma: f64, rng: &mut ChaCha8Rng) -> CircuitParams {
    if rel_sigma == 0.0 {
        return nominal.clone();
    }
    let x: Vec<f64> = nominal
        .elements()
        .into_iter()
        .map(|x0| loop {
            let z: f64 = StandardNormal.sample(rng);
            let x = x0 * (1.0 + rel_sigma * z);
            if x > 0.0 {
                break x;
            }
        })
        .collect();
    nominal.with_elements(&x).expect("element count preserved")
}

/// Every element drawn from `Normal(x₀, rel_sigma·x₀)`, redrawn while non-positive.
pub fn sample_circuit_params(nominal: &CircuitParams, em: &ErrorModel, draw_index: u64) -> CircuitParams {
    perturb(nominal, em.rel_sigma, &mut draw_rng(em.rng_seed, draw_index))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamStats {
    pub name: String,
    pub mean: f64,
    pub std: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub stats: Vec<ParamStats>,
    pub n_success: usize,
    pub n_failed: usize,
}

impl ErrorSummary {
    pub fn failure_fraction(&self) -> f64 {
        self.n_failed as f64 / (self.n_success + self.n_failed) as f64
    }

    pub fn get(&self, name: &str) -> Option<&ParamStats> {
        self.stats.iter().find(|s| s.name == name)
    }
}

/// Mean and sample standard deviation of `f` over `em.n_samples` perturbed circuits.
pub fn propagate_errors<F>(nominal: &CircuitParams, em: &ErrorModel, names: &[String], f: F) -> Result<ErrorSummary>
where
    F: Fn(&CircuitParams) -> Result<Vec<f64>>,
{
    em.validate()?;
    let k = names.len();
    let mut count = 0usize;
    let mut mean = vec![0.0; k];
    let mut m2 = vec![0.0; k];
    let mut failed = 0usize;
    for idx in 0..em.n_samples {
        let sample = sample_circuit_params(nominal, em, idx as u64);
        match f(&sample) {
            Ok(values) if values.len() == k && values.iter().all(|v| v.is_finite()) => {
                count += 1;
                for j in 0..k {
                    let delta = values[j] - mean[j];
                    mean[j] += delta / count as f64;
                    m2[j] += delta * (values[j] - mean[j]);
                }
            }
            Ok(_) => failed += 1,
            Err(e) => {
                log::debug!("sample {idx} failed: {e}");
                failed += 1;
            }
        }
    }
    if 2 * failed > em.n_samples {
        return Err(Error::TooManyFailures { failed, total: em.n_samples });
    }
    let stats = names
        .iter()
        .enumerate()
        .map(|(j, name)| ParamStats {
            name: name.clone(),
            mean: mean[j],
            std: if count > 1 { (m2[j] / (count - 1) as f64).sqrt() } else { 0.0 },
        })
        .collect();
    Ok(ErrorSummary { stats, n_success: count, n_failed: failed })
}

fn node_names(prefix: &str, n_controls: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n_controls).map(|i| format!("{prefix}_{i}")).collect();
    v.extend(["t1", "tb", "t2"].iter().map(|s| format!("{prefix}_{s}")));
    v
}

/// Statistics of the tabulated gate columns `[ω_controls.., ω̃_T1, ω_TB, ω̃_T2, jz.., jx]`.
pub fn propagate_gate_param_errors(nominal: &CircuitParams, em: &ErrorModel) -> Result<ErrorSummary> {
    let n = nominal.n_controls();
    let mut names = node_names("omega", n);
    names.extend((1..=n).map(|i| format!("jz_{i}")));
    names.push("jx".into());
    propagate_errors(nominal, em, &names, |p| Ok(gate_params_from_circuit(p)?.table_columns()))
}

/// Statistics of `[α per node, E^J/E^C per node]`.
pub fn propagate_quality_errors(nominal: &CircuitParams, em: &ErrorModel) -> Result<ErrorSummary> {
    let n = nominal.n_controls();
    let mut names = node_names("alpha", n);
    names.extend(node_names("ej_over_ec", n));
    propagate_errors(nominal, em, &names, |p| {
        let q = quality_metrics(p)?;
        Ok(q.alpha.into_iter().chain(q.ej_over_ec).collect())
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloSample {
    pub index: usize,
    pub params: CircuitParams,
    pub gate: DerivedGateParams,
    pub omega_phi: f64,
    /// Fidelity at the nominal gate time.
    pub fidelity: f64,
    /// Fidelity at each of [`FidelityDistribution::times`].
    pub trajectory: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FidelityDistribution {
    pub samples: Vec<MonteCarloSample>,
    pub failures: Vec<(usize, String)>,
    pub nominal_fidelity: f64,
    pub gate_time: f64,
    pub times: Vec<f64>,
}

impl FidelityDistribution {
    pub fn fidelities(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.fidelity).collect()
    }

    pub fn fraction_above(&self, threshold: f64) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().filter(|s| s.fidelity > threshold).count() as f64 / self.samples.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().map(|s| s.fidelity).sum::<f64>() / self.samples.len().max(1) as f64
    }

    /// Mean fidelity at each sampled time.
    pub fn mean_trajectory(&self) -> Vec<f64> {
        let n = self.samples.len().max(1) as f64;
        (0..self.times.len())
            .map(|k| self.samples.iter().map(|s| s.trajectory[k]).sum::<f64>() / n)
            .collect()
    }

    /// Empirical CDF as `(fidelity, P(F ≤ fidelity))`, sorted ascending.
    pub fn cdf(&self) -> Vec<(f64, f64)> {
        let mut f = self.fidelities();
        f.sort_by(f64::total_cmp);
        let n = f.len() as f64;
        f.into_iter().enumerate().map(|(i, x)| (x, (i + 1) as f64 / n)).collect()
    }

    /// Lower empirical quantile.
    pub fn quantile(&self, q: f64) -> Option<f64> {
        let mut f = self.fidelities();
        if f.is_empty() || !(0.0..=1.0).contains(&q) {
            return None;
        }
        f.sort_by(f64::total_cmp);
        let idx = ((q * f.len() as f64).ceil() as usize).clamp(1, f.len()) - 1;
        Some(f[idx])
    }
}

fn sample_fidelity(
    p: &CircuitParams,
    drive: &FluxDrive,
    freq_offset: f64,
    gate_time: f64,
    spec: Option<&DecoherenceSpec>,
    opts: &FluxSimOptions,
) -> Result<(DerivedGateParams, f64, FluxGateTrajectory)> {
    let gate = gate_params_from_circuit(p)?;
    let centre = match drive.omega_phi {
        Some(w) => w,
        None => FluxGateModel::from_gate_params(&gate, drive)?.resonant_omega_phi(),
    };
    let omega_phi = centre + freq_offset;
    let run_opts = FluxSimOptions { t_final: Some(gate_time), ..opts.clone() };
    let traj = simulate_flux_driven_gate(&gate, &FluxDrive { omega_phi: Some(omega_phi), ..*drive }, spec, &run_opts)?;
    Ok((gate, omega_phi, traj))
}

/// Flux-driven gate fidelity at the nominal gate time for perturbed circuits, each driven at its
/// own resonance (or at `drive.omega_phi` when given) plus a Gaussian frequency error.
pub fn monte_carlo_gate_fidelity(
    nominal: &CircuitParams,
    em: &ErrorModel,
    drive: &FluxDrive,
    spec: Option<&DecoherenceSpec>,
    opts: &FluxSimOptions,
) -> Result<FidelityDistribution> {
    em.validate()?;
    let centred = nominal.with_flux(drive.theta);
    let nominal_gate = gate_params_from_circuit(&centred).map_err(|e| e.at("nominal circuit"))?;
    let gate_time = match opts.t_final {
        Some(t) => t,
        None => FluxGateModel::from_gate_params(&nominal_gate, drive)?.nominal_gate_time()?,
    };
    let (_, _, nominal) = sample_fidelity(&centred, drive, 0.0, gate_time, spec, opts)?;
    let mut samples = Vec::with_capacity(em.n_samples);
    let mut failures = Vec::new();
    for index in 0..em.n_samples {
        let mut rng = draw_rng(em.rng_seed, index as u64);
        let params = perturb(&centred, em.rel_sigma, &mut rng);
        let z: f64 = StandardNormal.sample(&mut rng);
        match sample_fidelity(&params, drive, em.flux_freq_sigma * z, gate_time, spec, opts) {
            Ok((gate, omega_phi, traj)) => samples.push(MonteCarloSample {
                index,
                params,
                gate,
                omega_phi,
                fidelity: traj.final_fidelity(),
                trajectory: traj.fidelity,
            }),
            Err(e) => {
                log::debug!("sample {index} failed: {e}");
                failures.push((index, e.to_string()));
            }
        }
    }
    if 2 * failures.len() > em.n_samples {
        return Err(Error::TooManyFailures { failed: failures.len(), total: em.n_samples });
    }
    Ok(FidelityDistribution {
        samples,
        failures,
        nominal_fidelity: nominal.final_fidelity(),
        gate_time,
        times: nominal.times,
    })
}
