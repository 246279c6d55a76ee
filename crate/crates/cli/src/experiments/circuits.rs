use ciswap::calibration::{propagate_errors, propagate_gate_param_errors, propagate_quality_errors, ErrorModel};
use ciswap::circuit_quantization::reference::{REFERENCE_GATE_PARAMS, REFERENCE_QUALITY, UNSTABLE_ROWS};
use ciswap::circuit_quantization::{
    flux_derivatives, flux_from_fraction, gate_params_from_circuit, quality_metrics, CircuitParams, FLUX_STEP,
};
use ciswap::{GHZ, MHZ};
use serde::{Deserialize, Serialize};

use crate::output::{num, Artifacts};
use crate::{CliError, ExperimentConfig, RunArtifacts};

const DEFAULT_TABLE_SAMPLES: usize = 10_000;
const DEFAULT_BAND_SAMPLES: usize = 200;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct TableParams {
    rows: Vec<usize>,
    rel_sigma: f64,
}

impl Default for TableParams {
    fn default() -> Self {
        Self { rows: (1..=10).collect(), rel_sigma: 0.05 }
    }
}

impl TableParams {
    fn check(&self) -> Result<(), CliError> {
        if self.rows.is_empty() || self.rows.iter().any(|r| !(1..=10).contains(r)) {
            return Err(CliError::Usage("rows must be a non-empty subset of 1..=10".into()));
        }
        if !(self.rel_sigma >= 0.0) {
            return Err(CliError::Usage("rel_sigma must be non-negative".into()));
        }
        Ok(())
    }
}

/// One computed quantity next to its tabulated counterpart.
#[derive(Serialize)]
struct Comparison {
    row: usize,
    quantity: String,
    nominal: f64,
    mc_mean: f64,
    mc_std: f64,
    reference: f64,
    reference_std: f64,
    rel_error: f64,
    exempt: bool,
}

impl Comparison {
    fn cells(&self) -> Vec<String> {
        vec![
            self.row.to_string(),
            self.quantity.clone(),
            num(self.nominal),
            num(self.mc_mean),
            num(self.mc_std),
            num(self.reference),
            num(self.reference_std),
            num(self.rel_error),
            self.exempt.to_string(),
        ]
    }
}

const COMPARISON_HEADER: [&str; 9] =
    ["row", "quantity", "nominal", "mc_mean", "mc_std", "reference", "reference_std", "rel_error", "exempt"];

fn rel_error(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

#[derive(Serialize)]
struct TableSummary {
    comparisons: usize,
    max_rel_error_checked: f64,
    max_std_ratio_deviation_checked: f64,
    failed_samples: usize,
}

fn summarize(comparisons: &[Comparison], failed_samples: usize) -> TableSummary {
    let checked = comparisons.iter().filter(|c| !c.exempt);
    TableSummary {
        comparisons: comparisons.len(),
        max_rel_error_checked: checked.clone().map(|c| c.rel_error).fold(0.0, f64::max),
        max_std_ratio_deviation_checked: checked
            .filter(|c| c.reference_std > 0.0)
            .map(|c| (c.mc_std / c.reference_std - 1.0).abs())
            .fold(0.0, f64::max),
        failed_samples,
    }
}

fn error_model(config: &ExperimentConfig, rel_sigma: f64, default_samples: usize) -> ErrorModel {
    ErrorModel { rel_sigma, n_samples: config.samples_or(default_samples), rng_seed: config.seed, ..ErrorModel::default() }
}

pub(crate) fn table2_derive(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let params: TableParams = config.params()?;
    params.check()?;
    let em = error_model(config, params.rel_sigma, DEFAULT_TABLE_SAMPLES);
    let labels = ["omega_1_GHz", "omega_t1_GHz", "omega_tb_GHz", "omega_t2_GHz", "jz_MHz", "jx_MHz"];
    let mut comparisons = Vec::new();
    let mut failed = 0;
    for &row in &params.rows {
        let circuit = CircuitParams::reference(row)?;
        let exempt = UNSTABLE_ROWS.contains(&row);
        let (nominal, mc) = match (gate_params_from_circuit(&circuit), propagate_gate_param_errors(&circuit, &em)) {
            (Ok(g), Ok(mc)) => (Some(g.table_columns()), Some(mc)),
            (Err(e), _) | (_, Err(e)) if !exempt => return Err(e.into()),
            (g, mc) => {
                log::warn!("reference row {row} is outside the model's validity");
                (g.ok().map(|g| g.table_columns()), mc.ok())
            }
        };
        failed += mc.as_ref().map_or(em.n_samples, |m| m.n_failed);
        for (k, label) in labels.iter().enumerate() {
            let unit = if k < 4 { GHZ } else { MHZ };
            let (reference, reference_std) = REFERENCE_GATE_PARAMS[row - 1][k];
            let value = nominal.as_ref().map_or(f64::NAN, |v| v[k] / unit);
            comparisons.push(Comparison {
                row,
                quantity: label.to_string(),
                nominal: value,
                mc_mean: mc.as_ref().map_or(f64::NAN, |m| m.stats[k].mean / unit),
                mc_std: mc.as_ref().map_or(f64::NAN, |m| m.stats[k].std / unit),
                reference,
                reference_std,
                rel_error: rel_error(value, reference),
                exempt,
            });
        }
    }
    write_table(config, &params, "table2_derive.csv", &comparisons, failed)
}

pub(crate) fn table3_quality(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let params: TableParams = config.params()?;
    params.check()?;
    let em = error_model(config, params.rel_sigma, DEFAULT_TABLE_SAMPLES);
    let nodes = ["1", "t1", "tb", "t2"];
    let mut comparisons = Vec::new();
    let mut failed = 0;
    for &row in &params.rows {
        let circuit = CircuitParams::reference(row)?;
        let q = quality_metrics(&circuit)?;
        let nominal: Vec<f64> = q.alpha.iter().map(|a| 100.0 * a).chain(q.ej_over_ec.iter().copied()).collect();
        let mc = propagate_quality_errors(&circuit, &em)?;
        failed += mc.n_failed;
        for k in 0..8 {
            let (label, scale) =
                if k < 4 { (format!("alpha_{}_percent", nodes[k]), 100.0) } else { (format!("ej_over_ec_{}", nodes[k - 4]), 1.0) };
            let (reference, reference_std) = REFERENCE_QUALITY[row - 1][k];
            comparisons.push(Comparison {
                row,
                quantity: label,
                nominal: nominal[k],
                mc_mean: mc.stats[k].mean * scale,
                mc_std: mc.stats[k].std * scale,
                reference,
                reference_std,
                rel_error: rel_error(nominal[k], reference),
                exempt: UNSTABLE_ROWS.contains(&row),
            });
        }
    }
    write_table(config, &params, "table3_quality.csv", &comparisons, failed)
}

fn write_table(
    config: &ExperimentConfig,
    params: &TableParams,
    file: &str,
    comparisons: &[Comparison],
    failed: usize,
) -> Result<RunArtifacts, CliError> {
    let rows: Vec<Vec<String>> = comparisons.iter().map(Comparison::cells).collect();
    let mut out = Artifacts::new(config, params)?;
    out.csv(file, &COMPARISON_HEADER, &rows)?;
    out.summary(&summarize(comparisons, failed))?;
    Ok(RunArtifacts { files: out.files })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FluxBandParams {
    row: usize,
    /// Bus flux as a fraction of the flux quantum.
    flux_min: f64,
    flux_max: f64,
    n_points: usize,
    rel_sigma: f64,
}

impl Default for FluxBandParams {
    fn default() -> Self {
        Self { row: 2, flux_min: 0.0, flux_max: 0.12, n_points: 49, rel_sigma: 0.05 }
    }
}

const FLUX_QUANTITIES: [&str; 9] = [
    "jx_MHz",
    "djx_MHz_per_rad",
    "d2jx_MHz_per_rad2",
    "omega_t1_GHz",
    "domega_t1_GHz_per_rad",
    "d2omega_t1_GHz_per_rad2",
    "omega_t2_GHz",
    "domega_t2_GHz_per_rad",
    "d2omega_t2_GHz_per_rad2",
];

fn flux_columns(p: &CircuitParams, theta: f64) -> ciswap::Result<Vec<f64>> {
    let d = flux_derivatives(p, theta, FLUX_STEP)?;
    Ok(vec![
        d.jx / MHZ,
        d.djx / MHZ,
        d.d2jx / MHZ,
        d.omega_dressed[0] / GHZ,
        d.domega[0] / GHZ,
        d.d2omega[0] / GHZ,
        d.omega_dressed[1] / GHZ,
        d.domega[1] / GHZ,
        d.d2omega[1] / GHZ,
    ])
}

#[derive(Serialize)]
struct FluxBandSummary {
    points: usize,
    points_without_band: usize,
    failed_points: usize,
}

pub(crate) fn fig3_flux_derivatives(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let params: FluxBandParams = config.params()?;
    if !(1..=10).contains(&params.row) || params.n_points < 2 || !(params.flux_max > params.flux_min) {
        return Err(CliError::Usage("need row in 1..=10, n_points ≥ 2 and flux_max > flux_min".into()));
    }
    let circuit = CircuitParams::reference(params.row)?;
    let em = error_model(config, params.rel_sigma, DEFAULT_BAND_SAMPLES);
    let names: Vec<String> = FLUX_QUANTITIES.iter().map(|s| s.to_string()).collect();
    let mut header = vec!["flux_fraction".to_string()];
    for q in FLUX_QUANTITIES {
        header.extend([q.to_string(), format!("{q}_mc_mean"), format!("{q}_mc_std")]);
    }
    let mut rows = Vec::new();
    let mut summary = FluxBandSummary { points: params.n_points, points_without_band: 0, failed_points: 0 };
    for k in 0..params.n_points {
        let fraction = params.flux_min + (params.flux_max - params.flux_min) * k as f64 / (params.n_points - 1) as f64;
        let theta = flux_from_fraction(fraction);
        let mut row = vec![num(fraction)];
        let nominal = match flux_columns(&circuit, theta) {
            Ok(v) => v,
            Err(e) => {
                log::warn!("flux {fraction}: {e}");
                summary.failed_points += 1;
                rows.push(row.into_iter().chain(std::iter::repeat(String::new()).take(3 * FLUX_QUANTITIES.len())).collect());
                continue;
            }
        };
        let band = propagate_errors(&circuit, &em, &names, |p| flux_columns(p, theta));
        if band.is_err() {
            summary.points_without_band += 1;
        }
        for (j, value) in nominal.iter().enumerate() {
            row.push(num(*value));
            match &band {
                Ok(b) => row.extend([num(b.stats[j].mean), num(b.stats[j].std)]),
                Err(_) => row.extend([String::new(), String::new()]),
            }
        }
        rows.push(row);
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut out = Artifacts::new(config, &params)?;
    out.csv("fig3_flux_derivatives.csv", &header, &rows)?;
    out.summary(&summary)?;
    Ok(RunArtifacts { files: out.files })
}
