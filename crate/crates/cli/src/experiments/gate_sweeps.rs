use ciswap::dynamics::{simulate_cniswap, simulate_swap_array};
use ciswap::{GateModelParams, SwapArrayParams, GHZ, MHZ, NS};
use serde::{Deserialize, Serialize};

use super::decoherence;
use crate::output::{fid, num, Artifacts};
use crate::{CliError, ExperimentConfig, RunArtifacts};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Fig1Params {
    jz_mhz: f64,
    jx_mhz: Vec<f64>,
    n_controls: usize,
    t1_us: f64,
    t2_us: f64,
}

impl Default for Fig1Params {
    fn default() -> Self {
        Self { jz_mhz: 50.0, jx_mhz: (5..=25).map(f64::from).collect(), n_controls: 1, t1_us: 30.0, t2_us: 30.0 }
    }
}

#[derive(Serialize)]
struct Fig1Summary {
    peak_fidelity_decoherence: f64,
    ratio_at_peak: f64,
    min_fidelity_nodecoherence: f64,
    fidelity_nodecoherence_at_ratio_2: Option<f64>,
    /// Largest drop of the no-decoherence fidelity when the exchange is reduced to the next grid point.
    max_drop_as_jx_decreases: f64,
}

fn simulate_pair(
    n: usize,
    jz: f64,
    jx: f64,
    t1_us: f64,
    t2_us: f64,
) -> Result<(f64, f64, f64), CliError> {
    let p = GateModelParams::resonant(vec![jz; n], jx);
    let spec = decoherence(n + 2, t1_us, t2_us)?;
    let clean = simulate_cniswap(&p, None)?;
    let noisy = simulate_cniswap(&p, Some(&spec))?;
    Ok((clean.fidelity, noisy.fidelity, clean.gate_time))
}

pub(crate) fn fig1_jx_sweep(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let params: Fig1Params = config.params()?;
    if params.jx_mhz.is_empty() || params.n_controls == 0 {
        return Err(CliError::Usage("jx_mhz must be non-empty and n_controls ≥ 1".into()));
    }
    let mut jx_sorted = params.jx_mhz.clone();
    jx_sorted.sort_by(f64::total_cmp);
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &jx in &jx_sorted {
        let (clean, noisy, t) = simulate_pair(params.n_controls, params.jz_mhz * MHZ, jx * MHZ, params.t1_us, params.t2_us)?;
        rows.push(vec![num(jx), fid(clean), fid(noisy), num(t / NS)]);
        points.push((jx, clean, noisy));
    }
    let (peak_jx, _, peak) = points.iter().copied().fold((f64::NAN, 0.0, f64::NEG_INFINITY), |a, p| if p.2 > a.2 { p } else { a });
    let max_drop = points.windows(2).map(|w| w[1].1 - w[0].1).fold(0.0, f64::max);
    let summary = Fig1Summary {
        peak_fidelity_decoherence: peak,
        ratio_at_peak: params.jz_mhz / peak_jx,
        min_fidelity_nodecoherence: points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
        fidelity_nodecoherence_at_ratio_2: points.iter().find(|p| (params.jz_mhz / p.0 - 2.0).abs() < 1e-9).map(|p| p.1),
        max_drop_as_jx_decreases: max_drop,
    };
    let mut out = Artifacts::new(config, &params)?;
    out.csv(
        "fig1_jx_sweep.csv",
        &["jx_over_2pi_MHz", "fidelity_nodecoherence", "fidelity_decoherence", "gate_time_ns"],
        &rows,
    )?;
    out.summary(&summary)?;
    Ok(RunArtifacts { files: out.files })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Fig2Params {
    jz_mhz: f64,
    ratios: Vec<f64>,
    n_controls: Vec<usize>,
    t1_us: f64,
    t2_us: f64,
}

impl Default for Fig2Params {
    fn default() -> Self {
        Self { jz_mhz: 50.0, ratios: vec![4.0, 5.0], n_controls: vec![1, 2, 3, 4], t1_us: 30.0, t2_us: 30.0 }
    }
}

#[derive(Serialize)]
struct Fig2Point {
    n_controls: usize,
    ratio: f64,
    fidelity_nodecoherence: f64,
    fidelity_decoherence: f64,
}

pub(crate) fn fig2_control_sweep(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let params: Fig2Params = config.params()?;
    if params.n_controls.iter().any(|&n| n == 0 || n > 6) || params.ratios.iter().any(|r| !(*r > 0.0)) {
        return Err(CliError::Usage("n_controls must lie in 1..=6 and ratios must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &ratio in &params.ratios {
        for &n in &params.n_controls {
            let jz = params.jz_mhz * MHZ;
            let (clean, noisy, t) = simulate_pair(n, jz, jz / ratio, params.t1_us, params.t2_us)?;
            rows.push(vec![n.to_string(), num(ratio), fid(clean), fid(noisy), num(t / NS)]);
            points.push(Fig2Point { n_controls: n, ratio, fidelity_nodecoherence: clean, fidelity_decoherence: noisy });
        }
    }
    let mut out = Artifacts::new(config, &params)?;
    out.csv(
        "fig2_control_sweep.csv",
        &["n_controls", "jz_over_jx", "fidelity_nodecoherence", "fidelity_decoherence", "gate_time_ns"],
        &rows,
    )?;
    out.summary(&points)?;
    Ok(RunArtifacts { files: out.files })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SwapArrayConfig {
    jz_mhz: Vec<f64>,
    /// `J^z/J^x` with `J^z = min |jz|`.
    ratio: f64,
    omega_bar_ghz: f64,
    control_ghz: Vec<f64>,
    t1_us: f64,
    t2_us: f64,
}

impl Default for SwapArrayConfig {
    fn default() -> Self {
        Self {
            jz_mhz: vec![-20.0, 20.0, 60.0],
            ratio: 5.0,
            omega_bar_ghz: 5.0,
            control_ghz: vec![4.0, 4.2, 4.4],
            t1_us: 30.0,
            t2_us: 30.0,
        }
    }
}

#[derive(Serialize)]
struct SwapArraySummary {
    fidelity_nodecoherence: f64,
    fidelity_decoherence: f64,
    gate_time_ns: f64,
    jx_over_2pi_mhz: f64,
}

pub(crate) fn sec4_swap_array(config: &ExperimentConfig) -> Result<RunArtifacts, CliError> {
    let params: SwapArrayConfig = config.params()?;
    let n = params.jz_mhz.len();
    if !(3..=4).contains(&n) || params.control_ghz.len() != n || !(params.ratio > 0.0) {
        return Err(CliError::Usage("swap array needs 3 or 4 targets with one control frequency each".into()));
    }
    let jz: Vec<f64> = params.jz_mhz.iter().map(|z| z * MHZ).collect();
    let jx = jz.iter().fold(f64::INFINITY, |m, z| m.min(z.abs())) / params.ratio;
    let p = SwapArrayParams::resonant(
        params.omega_bar_ghz * GHZ,
        jz,
        jx,
        params.control_ghz.iter().map(|w| w * GHZ).collect(),
    );
    let spec = decoherence(2 * n, params.t1_us, params.t2_us)?;
    let clean = simulate_swap_array(&p, None)?;
    let noisy = simulate_swap_array(&p, Some(&spec))?;
    let t = p.gate_time();
    let rows = vec![
        vec!["false".to_string(), fid(clean), num(t / NS)],
        vec!["true".to_string(), fid(noisy), num(t / NS)],
    ];
    let mut out = Artifacts::new(config, &params)?;
    out.csv("sec4_swap_array.csv", &["decoherence", "fidelity", "gate_time_ns"], &rows)?;
    out.summary(&SwapArraySummary {
        fidelity_nodecoherence: clean,
        fidelity_decoherence: noisy,
        gate_time_ns: t / NS,
        jx_over_2pi_mhz: jx / MHZ,
    })?;
    Ok(RunArtifacts { files: out.files })
}
