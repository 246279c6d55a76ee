use rand::Rng;
use serde::{Deserialize, Serialize};

use super::monte_carlo::draw_rng;
use super::nelder_mead::{nelder_mead, NelderMeadOptions};
use crate::circuit_quantization::{
    derive_quantities, dressed_params, gate_params_from_circuit, quality_metrics, CircuitParams, DerivedGateParams,
    QualityMetrics, DISPERSIVE_WARNING,
};
use crate::{Error, Result, GHZ, MHZ};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchWeights {
    pub range: f64,
    pub floor: f64,
    pub dispersive: f64,
}

impl Default for SearchWeights {
    fn default() -> Self {
        Self { range: 1.0, floor: 100.0, dispersive: 1.0 }
    }
}

/// Requirements on a candidate circuit; coupling ranges are on magnitudes, in rad/s.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchTargets {
    pub n_controls: usize,
    pub jz_range: (f64, f64),
    pub jx_range: (f64, f64),
    /// Minimum `|ω_control − ω̃_Tj|`.
    pub min_control_detuning: f64,
    /// Required `|α|` for every node.
    pub alpha_floor: f64,
    pub ej_ec_floor: f64,
    /// Flux at which the gate parameters are evaluated.
    pub flux: f64,
    /// Bounds for Josephson energies (rad/s) and capacitances (fF).
    pub energy_bounds: (f64, f64),
    pub capacitance_bounds: (f64, f64),
    pub weights: SearchWeights,
    pub max_iter: usize,
}

impl Default for SearchTargets {
    fn default() -> Self {
        Self {
            n_controls: 1,
            jz_range: (40.0 * MHZ, 300.0 * MHZ),
            jx_range: (5.0 * MHZ, 50.0 * MHZ),
            min_control_detuning: 1.0 * GHZ,
            alpha_floor: 0.02,
            ej_ec_floor: 70.0,
            flux: 0.0,
            energy_bounds: (0.01 * GHZ, 100.0 * GHZ),
            capacitance_bounds: (1.0, 100.0),
            weights: SearchWeights::default(),
            max_iter: 3000,
        }
    }
}

impl SearchTargets {
    pub fn validate(&self) -> Result<()> {
        let ranges = [self.jz_range, self.jx_range, self.energy_bounds, self.capacitance_bounds];
        if ranges.iter().any(|&(lo, hi)| !(lo > 0.0 && hi >= lo && hi.is_finite())) {
            return Err(Error::InvalidParameter("target ranges must satisfy 0 < lo ≤ hi < ∞".into()));
        }
        if !(self.alpha_floor > 0.0 && self.ej_ec_floor > 0.0 && self.min_control_detuning >= 0.0) {
            return Err(Error::InvalidParameter("quality floors must be positive".into()));
        }
        if self.n_controls == 0 {
            return Err(Error::InvalidParameter("at least one control is required".into()));
        }
        Ok(())
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        let n = self.n_controls;
        let mut b = vec![self.energy_bounds; 3 + 2 * n];
        b.extend(vec![self.capacitance_bounds; 4 + 2 * n]);
        b
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub params: CircuitParams,
    pub cost: f64,
    pub feasible: bool,
    pub gate: DerivedGateParams,
    pub quality: QualityMetrics,
}

struct Evaluation {
    hard: f64,
    soft: f64,
    gate: DerivedGateParams,
    quality: QualityMetrics,
}

const FAILED_COST: f64 = 1e6;

fn hinge_below(value: f64, floor: f64) -> f64 {
    ((floor - value) / floor).max(0.0).powi(2)
}

fn range_violation(value: f64, (lo, hi): (f64, f64)) -> f64 {
    hinge_below(value, lo) + ((value - hi) / hi).max(0.0).powi(2)
}

fn evaluate(p: &CircuitParams, t: &SearchTargets) -> Result<Evaluation> {
    let gate = gate_params_from_circuit(p)?;
    let quality = quality_metrics(p)?;
    let ratios = dressed_params(&derive_quantities(p)?)?.ratios;
    let w = &t.weights;
    let mut hard = 0.0;
    for (x, &(lo, hi)) in p.elements().iter().zip(&t.bounds()) {
        hard += w.floor * range_violation(*x, (lo, hi));
    }
    for jz in &gate.jz {
        hard += w.range * range_violation(jz.abs(), t.jz_range);
    }
    hard += w.range * range_violation(gate.jx_dressed.abs(), t.jx_range);
    for a in &quality.alpha {
        hard += w.floor * hinge_below(-a, t.alpha_floor);
    }
    for r in &quality.ej_over_ec {
        hard += w.floor * hinge_below(*r, t.ej_ec_floor);
    }
    if t.min_control_detuning > 0.0 {
        for wc in &gate.omega[..gate.n_controls] {
            for wt in gate.omega_dressed {
                hard += w.range * hinge_below((wc - wt).abs(), t.min_control_detuning);
            }
        }
    }
    let soft = ratios.iter().map(|r| w.dispersive * ((r - DISPERSIVE_WARNING) / DISPERSIVE_WARNING).max(0.0).powi(2)).sum();
    Ok(Evaluation { hard, soft, gate, quality })
}

fn random_start(t: &SearchTargets, rng: &mut impl Rng) -> Vec<f64> {
    t.bounds().iter().map(|&(lo, hi)| rng.gen_range(lo.ln()..=hi.ln())).collect()
}

/// Nelder–Mead restarts in log-element space: the `seeds` first, then random log-uniform starts.
/// Returns the feasible optima ranked by cost.
pub fn search_circuit_params(
    targets: &SearchTargets,
    n_restarts: usize,
    rng_seed: u64,
    seeds: &[CircuitParams],
) -> Result<Vec<Candidate>> {
    targets.validate()?;
    if seeds.iter().any(|s| s.n_controls() != targets.n_controls) {
        return Err(Error::InvalidParameter("seed circuits must match the target control count".into()));
    }
    let template = CircuitParams {
        e_control: vec![1.0; targets.n_controls],
        e_t1: 1.0,
        e_t2: 1.0,
        e_tb: 1.0,
        e_z: vec![1.0; targets.n_controls],
        c_control: vec![1.0; targets.n_controls],
        c_t1: 1.0,
        c_t2: 1.0,
        c_tb: 1.0,
        c_z: vec![1.0; targets.n_controls],
        c_x: 1.0,
        flux: targets.flux,
    };
    let to_params = |y: &[f64]| -> Result<CircuitParams> {
        template.with_elements(&y.iter().map(|v| v.exp()).collect::<Vec<_>>())
    };
    let cost = |y: &[f64]| -> f64 {
        match to_params(y).and_then(|p| evaluate(&p, targets)) {
            Ok(e) => e.hard + e.soft,
            Err(_) => FAILED_COST,
        }
    };
    let opts = NelderMeadOptions { max_iter: targets.max_iter, x_tol: 1e-8, f_tol: 1e-14, initial_step: 0.05 };
    let mut rng = draw_rng(rng_seed, 0);
    let mut out: Vec<Candidate> = Vec::new();
    let mut best_failed: Option<(CircuitParams, f64)> = None;
    for r in 0..n_restarts.max(seeds.len()) {
        let start = match seeds.get(r) {
            Some(s) => s.with_flux(targets.flux).elements().iter().map(|v| v.ln()).collect(),
            None => random_start(targets, &mut rng),
        };
        if !cost(&start).is_finite() {
            continue;
        }
        let res = nelder_mead(cost, &start, &opts)?;
        let params = to_params(&res.x)?;
        match evaluate(&params, targets) {
            Ok(e) if e.hard == 0.0 => out.push(Candidate {
                params,
                cost: res.f,
                feasible: true,
                gate: e.gate,
                quality: e.quality,
            }),
            _ => {
                if best_failed.as_ref().map_or(true, |(_, c)| res.f < *c) {
                    best_failed = Some((params, res.f));
                }
            }
        }
    }
    if out.is_empty() {
        let (best, best_cost) = best_failed.unwrap_or((template, f64::INFINITY));
        return Err(Error::NoFeasible { best: Box::new(best), best_cost });
    }
    out.sort_by(|a, b| a.cost.total_cmp(&b.cost));
    Ok(out)
}
