use serde::{Deserialize, Serialize};

use super::params::{CircuitParams, Nodes};
use crate::{Error, Result};

/// `e²/2ħ` for a 1 fF capacitance, in rad/s.
pub const CHARGING_ENERGY_PER_INV_FF: f64 = {
    const E: f64 = 1.602_176_634e-19;
    const HBAR: f64 = 1.054_571_817e-34;
    E * E / (2.0 * HBAR) / 1e-15
};

pub const DISPERSIVE_THRESHOLD: f64 = 0.3;
pub const DISPERSIVE_WARNING: f64 = 0.15;
/// Finite-difference step in `Φ₀/2π` units.
pub const FLUX_STEP: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedCircuitQuantities {
    pub n_controls: usize,
    pub flux: f64,
    /// Capacitance matrix in fF.
    pub k_matrix: Vec<Vec<f64>>,
    /// Inverse capacitance matrix scaled to energy, so that `E^C = (K⁻¹)ᵢᵢ/8`.
    pub k_inv: Vec<Vec<f64>>,
    pub e_j: Vec<f64>,
    pub e_c: Vec<f64>,
    pub zeta: Vec<f64>,
    /// `√(8 E^J E^C)`.
    pub omega_harmonic: Vec<f64>,
    /// Harmonic frequencies shifted by the Josephson couplers.
    pub omega: Vec<f64>,
    pub g_z: Vec<f64>,
    pub g_xz: Vec<f64>,
    /// Control to T1 exchange, including the coupler-junction contributions.
    pub g_x_control: Vec<f64>,
    /// `[g^x(T1, TB), g^x(T2, TB)]`.
    pub g_x_bus: [f64; 2],
    /// Capacitive exchange for every unordered node pair `(i, j)`, `i < j`.
    pub g_x: Vec<((usize, usize), f64)>,
    pub delta_small: f64,
}

impl DerivedCircuitQuantities {
    pub fn nodes(&self) -> Nodes {
        Nodes { n_controls: self.n_controls }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DressedParams {
    /// `[ω̃_T1, ω̃_T2]`.
    pub omega_dressed: [f64; 2],
    pub jx: f64,
    /// `|g/(ω_Tj − ω_TB)|` for T1 and T2.
    pub ratios: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxDerivatives {
    pub flux: f64,
    pub jx: f64,
    pub djx: f64,
    pub d2jx: f64,
    pub omega_dressed: [f64; 2],
    pub domega: [f64; 2],
    pub d2omega: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedGateParams {
    pub n_controls: usize,
    pub flux: f64,
    /// Undressed frequencies per node.
    pub omega: Vec<f64>,
    /// Transition-frequency difference T1 − T2 before dressing.
    pub delta_t1: f64,
    /// Same after dressing by the bus.
    pub delta_t1_dressed: f64,
    pub jz: Vec<f64>,
    pub jx_dressed: f64,
    pub omega_dressed: [f64; 2],
    pub djx_dphi: f64,
    pub d2jx_dphi2: f64,
    pub domega_dphi: [f64; 2],
    pub d2omega_dphi2: [f64; 2],
}

impl DerivedGateParams {
    /// `[ω_controls..., ω̃_T1, ω_TB, ω̃_T2, jz..., jx]`, matching the tabulated column layout.
    pub fn table_columns(&self) -> Vec<f64> {
        let nodes = Nodes { n_controls: self.n_controls };
        let mut v: Vec<f64> = self.omega[..self.n_controls].to_vec();
        v.extend([self.omega_dressed[0], self.omega[nodes.tb()], self.omega_dressed[1]]);
        v.extend(&self.jz);
        v.push(self.jx_dressed);
        v
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityMetrics {
    /// Relative anharmonicity per node (a fraction, not percent).
    pub alpha: Vec<f64>,
    pub ej_over_ec: Vec<f64>,
}

pub fn capacitance_matrix(p: &CircuitParams) -> Result<Vec<Vec<f64>>> {
    p.validate()?;
    let nodes = p.nodes();
    let (t1, tb, t2) = (nodes.t1(), nodes.tb(), nodes.t2());
    let mut k = vec![vec![0.0; nodes.count()]; nodes.count()];
    for (i, (&c, &cz)) in p.c_control.iter().zip(&p.c_z).enumerate() {
        k[i][i] = c + cz;
        k[i][t1] = -cz;
        k[t1][i] = -cz;
    }
    k[t1][t1] = p.c_t1 + p.c_z.iter().sum::<f64>() + 2.0 * p.c_x;
    k[tb][tb] = 4.0 * p.c_tb + 2.0 * p.c_x;
    k[t2][t2] = p.c_t2 + 2.0 * p.c_x;
    k[t1][tb] = -p.c_x;
    k[tb][t1] = -p.c_x;
    k[t2][tb] = -p.c_x;
    k[tb][t2] = -p.c_x;
    Ok(k)
}

fn invert_spd(k: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = k.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = k[i][j] - (0..j).map(|m| l[i][m] * l[j][m]).sum::<f64>();
            if i == j {
                if !(s > 0.0) {
                    return Err(Error::Singular);
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut inv = vec![vec![0.0; n]; n];
    for col in 0..n {
        let mut y = vec![0.0; n];
        for i in 0..n {
            let b = if i == col { 1.0 } else { 0.0 };
            y[i] = (b - (0..i).map(|m| l[i][m] * y[m]).sum::<f64>()) / l[i][i];
        }
        for i in (0..n).rev() {
            y[i] = (y[i] - (i + 1..n).map(|m| l[m][i] * y[m]).sum::<f64>()) / l[i][i];
        }
        for i in 0..n {
            inv[i][col] = y[i];
        }
    }
    Ok(inv)
}

pub fn derive_quantities(p: &CircuitParams) -> Result<DerivedCircuitQuantities> {
    let k_matrix = capacitance_matrix(p)?;
    let cos2 = (2.0 * p.flux).cos();
    if !(cos2 > 0.0) {
        return Err(Error::FluxDomain { flux: p.flux });
    }
    let scale = 8.0 * CHARGING_ENERGY_PER_INV_FF;
    let k_inv: Vec<Vec<f64>> = invert_spd(&k_matrix)?
        .into_iter()
        .map(|row| row.into_iter().map(|x| x * scale).collect())
        .collect();
    let nodes = p.nodes();
    let n = nodes.n_controls;
    let (t1, tb, t2) = (nodes.t1(), nodes.tb(), nodes.t2());

    let mut e_j = vec![0.0; nodes.count()];
    for i in 0..n {
        e_j[i] = p.e_control[i] + p.e_z[i];
    }
    e_j[t1] = p.e_t1 + p.e_z.iter().sum::<f64>();
    e_j[tb] = 8.0 * p.e_tb * cos2;
    e_j[t2] = p.e_t2;

    let e_c: Vec<f64> = (0..nodes.count()).map(|i| k_inv[i][i] / 8.0).collect();
    let zeta: Vec<f64> = (0..nodes.count()).map(|i| (k_inv[i][i] / e_j[i]).sqrt()).collect();
    let omega_harmonic: Vec<f64> = e_j.iter().zip(&e_c).map(|(j, c)| (8.0 * j * c).sqrt()).collect();

    let g_cap = |i: usize, j: usize| -0.5 * k_inv[i][j] / (zeta[i] * zeta[j]).sqrt();
    let mut omega = omega_harmonic.clone();
    let mut g_z = Vec::with_capacity(n);
    let mut g_xz = Vec::with_capacity(n);
    let mut g_x_control = Vec::with_capacity(n);
    for i in 0..n {
        let ez = p.e_z[i];
        let zz = zeta[i] * zeta[t1];
        let root = zz.sqrt();
        omega[i] -= ez * zz;
        omega[t1] -= ez * zz;
        g_z.push(-0.25 * ez * zz);
        g_xz.push(-ez * root / 16.0);
        g_x_control.push(g_cap(i, t1) - 0.5 * ez * root + ez * (zeta[i] + zeta[t1]) * root / 16.0);
    }
    let mut g_x = Vec::new();
    for i in 0..nodes.count() {
        for j in i + 1..nodes.count() {
            g_x.push(((i, j), g_cap(i, j)));
        }
    }
    let q = DerivedCircuitQuantities {
        n_controls: n,
        flux: p.flux,
        g_x_bus: [g_cap(t1, tb), g_cap(t2, tb)],
        delta_small: 0.5 * (omega[t1] - omega[t2]),
        k_matrix,
        k_inv,
        e_j,
        e_c,
        zeta,
        omega_harmonic,
        omega,
        g_z,
        g_xz,
        g_x_control,
        g_x,
    };
    if q.omega.iter().chain(&q.zeta).any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("derived circuit quantities"));
    }
    Ok(q)
}

/// Control-to-target detuning `|ω_T1 − ω_i|` below which the control counts as degenerate.
pub const MIN_CONTROL_DETUNING: f64 = 2.0 * std::f64::consts::PI * 10e6;

fn control_detunings(q: &DerivedCircuitQuantities) -> Result<Vec<f64>> {
    let t1 = q.nodes().t1();
    (0..q.n_controls)
        .map(|i| {
            let d = q.omega[t1] - q.omega[i];
            if !(d.abs() >= MIN_CONTROL_DETUNING) {
                return Err(Error::Perturbative(format!(
                    "control {i} detuned from T1 by only {:.3} MHz",
                    d / (2.0 * std::f64::consts::PI * 1e6)
                )));
            }
            Ok(d)
        })
        .collect()
}

/// `(Δ_T1, jz)`: T1 − T2 transition-frequency difference including the first-order Ising shift,
/// and the `σᶻσᶻ` couplings.
pub fn perturbative_gate_params(q: &DerivedCircuitQuantities) -> Result<(f64, Vec<f64>)> {
    control_detunings(q)?;
    let nodes = q.nodes();
    let delta = q.omega[nodes.t1()] - q.omega[nodes.t2()] + 0.5 * q.g_z.iter().sum::<f64>();
    Ok((delta, q.g_z.iter().map(|g| 0.25 * g).collect()))
}

/// Second-order T1 shift `g²/(ω_T1 − ω_i)` from each control's exchange coupling, with
/// `g = g^x − g^xz(ζ_i + 2ζ_T1)`, and the ratio `|g/(ω_T1 − ω_i)|`.
pub fn control_exchange_shifts(q: &DerivedCircuitQuantities) -> Result<Vec<(f64, f64)>> {
    let t1 = q.nodes().t1();
    let detunings = control_detunings(q)?;
    Ok(detunings
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let g = q.g_x_control[i] - q.g_xz[i] * (q.zeta[i] + 2.0 * q.zeta[t1]);
            (g * g / d, (g / d).abs())
        })
        .collect())
}

fn check_dispersive(coupler: &'static str, ratio: f64) -> Result<()> {
    if !(ratio < DISPERSIVE_THRESHOLD) {
        return Err(Error::Dispersive { coupler, ratio });
    }
    if ratio > DISPERSIVE_WARNING {
        log::warn!("{coupler} is weakly dispersive: |g/Δ| = {ratio:.3}");
    }
    Ok(())
}

/// Adiabatic elimination of the tunable bus.
pub fn dressed_params(q: &DerivedCircuitQuantities) -> Result<DressedParams> {
    let nodes = q.nodes();
    let w_tb = q.omega[nodes.tb()];
    let d1 = q.omega[nodes.t1()] - w_tb;
    let d2 = q.omega[nodes.t2()] - w_tb;
    let [g1, g2] = q.g_x_bus;
    let ratios = [(g1 / d1).abs(), (g2 / d2).abs()];
    check_dispersive("T1-bus", ratios[0])?;
    check_dispersive("T2-bus", ratios[1])?;
    Ok(DressedParams {
        omega_dressed: [q.omega[nodes.t1()] + g1 * g1 / d1, q.omega[nodes.t2()] + g2 * g2 / d2],
        jx: 0.5 * g1 * g2 * (1.0 / d1 + 1.0 / d2),
        ratios,
    })
}

fn dressed_at(p: &CircuitParams, flux: f64) -> Result<DressedParams> {
    dressed_params(&derive_quantities(&p.with_flux(flux))?)
}

/// Five-point central differences of `J̃^x` and `ω̃_Tj` at `theta`.
pub fn flux_derivatives(p: &CircuitParams, theta: f64, h: f64) -> Result<FluxDerivatives> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!("finite-difference step must be positive, got {h}")));
    }
    for edge in [theta - 2.0 * h, theta + 2.0 * h] {
        if !((2.0 * edge).cos() > 0.0) {
            return Err(Error::FluxDomain { flux: edge });
        }
    }
    let samples: Vec<DressedParams> =
        [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|k| dressed_at(p, theta + k * h)).collect::<Result<_>>()?;
    let first = |f: &dyn Fn(&DressedParams) -> f64| {
        (-f(&samples[4]) + 8.0 * f(&samples[3]) - 8.0 * f(&samples[1]) + f(&samples[0])) / (12.0 * h)
    };
    let second = |f: &dyn Fn(&DressedParams) -> f64| {
        (-f(&samples[4]) + 16.0 * f(&samples[3]) - 30.0 * f(&samples[2]) + 16.0 * f(&samples[1]) - f(&samples[0]))
            / (12.0 * h * h)
    };
    let w1 = |d: &DressedParams| d.omega_dressed[0];
    let w2 = |d: &DressedParams| d.omega_dressed[1];
    let jx = |d: &DressedParams| d.jx;
    Ok(FluxDerivatives {
        flux: theta,
        jx: samples[2].jx,
        djx: first(&jx),
        d2jx: second(&jx),
        omega_dressed: samples[2].omega_dressed,
        domega: [first(&w1), first(&w2)],
        d2omega: [second(&w1), second(&w2)],
    })
}

/// Full pipeline evaluated at `p.flux`.
pub fn gate_params_from_circuit(p: &CircuitParams) -> Result<DerivedGateParams> {
    let q = derive_quantities(p).map_err(|e| e.at("effective energies"))?;
    let (delta_t1, jz) = perturbative_gate_params(&q).map_err(|e| e.at("control perturbation"))?;
    let dressed = dressed_params(&q).map_err(|e| e.at("bus elimination"))?;
    let deriv = flux_derivatives(p, p.flux, FLUX_STEP).map_err(|e| e.at("flux derivatives"))?;
    let nodes = q.nodes();
    let shift_t1 = dressed.omega_dressed[0] - q.omega[nodes.t1()];
    let shift_t2 = dressed.omega_dressed[1] - q.omega[nodes.t2()];
    Ok(DerivedGateParams {
        n_controls: q.n_controls,
        flux: p.flux,
        omega: q.omega.clone(),
        delta_t1,
        delta_t1_dressed: delta_t1 + shift_t1 - shift_t2,
        jz,
        jx_dressed: dressed.jx,
        omega_dressed: dressed.omega_dressed,
        djx_dphi: deriv.djx,
        d2jx_dphi2: deriv.d2jx,
        domega_dphi: deriv.domega,
        d2omega_dphi2: deriv.d2omega,
    })
}

pub fn quality_metrics(p: &CircuitParams) -> Result<QualityMetrics> {
    quality_metrics_with(p, true)
}

/// With `anharmonic = false` the quartic potential term is dropped and every `α` vanishes.
pub fn quality_metrics_with(p: &CircuitParams, anharmonic: bool) -> Result<QualityMetrics> {
    let q = derive_quantities(p)?;
    let alpha = q
        .e_c
        .iter()
        .zip(&q.omega)
        .map(|(ec, w)| if anharmonic { -ec / (2.0 * w) } else { 0.0 })
        .collect();
    let ej_over_ec = q.e_j.iter().zip(&q.e_c).map(|(j, c)| j / c).collect();
    Ok(QualityMetrics { alpha, ej_over_ec })
}
