use num_complex::Complex64;

use super::channel::{average_gate_fidelity, unitary_average_fidelity, QuantumChannel};
use super::decoherence::{collapse_operators, DecoherenceSpec};
use super::lindblad::{evolve_operators, TimeDependentHamiltonian};
use super::ode::{integrate, OdeOptions};
use crate::circuit_quantization::DerivedGateParams;
use crate::gate_models::{ideal_cniswap, interaction_hamiltonian, PhaseSign};
use crate::{Error, GateModelParams, Operator, Result};

/// Bus flux `Φ(t) = θ + χ·cos(ω_Φ t)` in `Φ₀/2π` units; `omega_phi = None` selects the resonance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluxDrive {
    pub theta: f64,
    pub chi: f64,
    pub omega_phi: Option<f64>,
}

/// Time-averaged target-pair model under flux modulation.
#[derive(Clone, Debug, PartialEq)]
pub struct FluxGateModel {
    pub n_controls: usize,
    /// Drive-shifted T1 − T2 detuning.
    pub delta_bar: f64,
    pub jz: Vec<f64>,
    /// `χ ∂J̃/∂Φ`, amplitude of the `cos(ω_Φ t)` exchange.
    pub first_harmonic: f64,
    /// `(χ²/4) ∂²J̃/∂Φ²`, amplitude of the `cos(2ω_Φ t)` exchange.
    pub second_harmonic: f64,
    pub omega_phi: f64,
}

impl FluxGateModel {
    pub fn from_gate_params(gp: &DerivedGateParams, drive: &FluxDrive) -> Result<Self> {
        if (gp.flux - drive.theta).abs() > 1e-12 * drive.theta.abs().max(1.0) {
            return Err(Error::InvalidParameter(format!(
                "gate parameters evaluated at flux {} but the drive is centred on {}",
                gp.flux, drive.theta
            )));
        }
        if !drive.chi.is_finite() || drive.omega_phi.is_some_and(|w| !w.is_finite()) {
            return Err(Error::NonFinite("flux drive"));
        }
        let c2 = drive.chi * drive.chi / 4.0;
        let mut model = Self {
            n_controls: gp.n_controls,
            delta_bar: gp.delta_t1_dressed + c2 * (gp.d2omega_dphi2[0] - gp.d2omega_dphi2[1]),
            jz: gp.jz.clone(),
            first_harmonic: drive.chi * gp.djx_dphi,
            second_harmonic: c2 * gp.d2jx_dphi2,
            omega_phi: 0.0,
        };
        model.omega_phi = drive.omega_phi.unwrap_or_else(|| model.resonant_omega_phi());
        Ok(model)
    }

    /// Splitting between `|10⟩` and `|01⟩` of the targets with every control excited.
    pub fn resonant_omega_phi(&self) -> f64 {
        (self.delta_bar + 2.0 * self.jz.iter().sum::<f64>()).abs()
    }

    /// `π/|χ ∂J̃/∂Φ|`.
    pub fn nominal_gate_time(&self) -> Result<f64> {
        if self.first_harmonic == 0.0 || !self.first_harmonic.is_finite() {
            return Err(Error::InvalidParameter("no first-harmonic exchange, gate time undefined".into()));
        }
        Ok(std::f64::consts::PI / self.first_harmonic.abs())
    }

    pub fn coupling(&self, t: f64) -> f64 {
        self.first_harmonic * (self.omega_phi * t).cos() + self.second_harmonic * (2.0 * self.omega_phi * t).cos()
    }

    pub fn phase_sign(&self) -> PhaseSign {
        PhaseSign::from_jx(self.first_harmonic)
    }

    pub fn diagonal_hamiltonian(&self) -> Result<Operator> {
        interaction_hamiltonian(&GateModelParams {
            n_controls: self.n_controls,
            omega: Vec::new(),
            delta: self.delta_bar,
            jz: self.jz.clone(),
            jx: 0.0,
            phase_sign: PhaseSign::MinusI,
        })
    }

    /// `σ⁺_T1σ⁻_T2 + σ⁻_T1σ⁺_T2`.
    pub fn exchange_operator(&self) -> Result<Operator> {
        interaction_hamiltonian(&GateModelParams {
            n_controls: self.n_controls,
            omega: Vec::new(),
            delta: 0.0,
            jz: vec![0.0; self.n_controls],
            jx: 1.0,
            phase_sign: PhaseSign::MinusI,
        })
    }

    pub fn hamiltonian(&self) -> Result<TimeDependentHamiltonian> {
        let model = self.clone();
        Ok(TimeDependentHamiltonian::constant(self.diagonal_hamiltonian()?)
            .with_drive(self.exchange_operator()?, move |t| model.coupling(t)))
    }
}

#[derive(Clone, Debug)]
pub struct FluxSimOptions {
    /// Defaults to the nominal gate time.
    pub t_final: Option<f64>,
    /// Evenly spaced samples on `(0, t_final]`, the last one at `t_final`.
    pub n_points: usize,
    pub ode: OdeOptions,
}

impl Default for FluxSimOptions {
    fn default() -> Self {
        Self { t_final: None, n_points: 1, ode: OdeOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FluxGateTrajectory {
    pub times: Vec<f64>,
    pub fidelity: Vec<f64>,
    pub gate_time: f64,
}

impl FluxGateTrajectory {
    pub fn final_fidelity(&self) -> f64 {
        *self.fidelity.last().expect("trajectory has at least one point")
    }
}

/// Integrates the flux-modulated exchange without averaging the fast terms and scores the
/// process, in the frame rotating with the diagonal, against the ideal controlled iSWAP.
pub fn simulate_flux_driven_gate(
    gp: &DerivedGateParams,
    drive: &FluxDrive,
    spec: Option<&DecoherenceSpec>,
    opts: &FluxSimOptions,
) -> Result<FluxGateTrajectory> {
    let model = FluxGateModel::from_gate_params(gp, drive)?;
    let gate_time = match opts.t_final {
        Some(t) => t,
        None => model.nominal_gate_time()?,
    };
    if !(gate_time > 0.0) || opts.n_points == 0 {
        return Err(Error::InvalidParameter("simulation time and point count must be positive".into()));
    }
    let times: Vec<f64> =
        (1..=opts.n_points).map(|k| gate_time * k as f64 / opts.n_points as f64).collect();
    let target = ideal_cniswap(model.n_controls, model.phase_sign());
    let h_diag = model.diagonal_hamiltonian()?;
    let energies: Vec<f64> = h_diag.diag().iter().map(|z| z.re).collect();
    let collapse = match spec {
        Some(s) => collapse_operators(model.n_controls + 2, s)?,
        None => Vec::new(),
    };
    let fidelity = if collapse.is_empty() {
        unitary_path(&model, &energies, &times, &target, &opts.ode)?
    } else {
        lindblad_path(&model, &energies, &collapse, &times, &target, &opts.ode)?
    };
    Ok(FluxGateTrajectory { times, fidelity, gate_time })
}

/// Evolves in the interaction picture of the diagonal, which is already the scoring frame.
fn unitary_path(
    model: &FluxGateModel,
    energies: &[f64],
    times: &[f64],
    target: &Operator,
    ode: &OdeOptions,
) -> Result<Vec<f64>> {
    let d = energies.len();
    let x = model.exchange_operator()?;
    let links: Vec<(usize, usize, f64)> = (0..d)
        .flat_map(|i| (0..d).map(move |k| (i, k)))
        .filter(|&(i, k)| x[(i, k)].norm() > 0.0)
        .map(|(i, k)| (i, k, energies[i] - energies[k]))
        .collect();
    let identity = Operator::identity(d);
    let rhs = |t: f64, u: &[Complex64], du: &mut [Complex64]| {
        du.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        let c = model.coupling(t);
        for &(i, k, w) in &links {
            let amp = Complex64::from_polar(c, w * t) * Complex64::new(0.0, -1.0);
            for j in 0..d {
                du[i * d + j] += amp * u[k * d + j];
            }
        }
    };
    let states = integrate(rhs, 0.0, identity.data(), times, ode).map_err(|e| e.at("flux-driven evolution"))?;
    states
        .into_iter()
        .map(|u| unitary_average_fidelity(&Operator::from_vec(d, u)?, target))
        .collect()
}

fn lindblad_path(
    model: &FluxGateModel,
    energies: &[f64],
    collapse: &[Operator],
    times: &[f64],
    target: &Operator,
    ode: &OdeOptions,
) -> Result<Vec<f64>> {
    let d = energies.len();
    let h = model.hamiltonian()?;
    let units: Vec<Operator> = (0..d * d)
        .map(|idx| {
            let mut m = Operator::zeros(d);
            m[(idx / d, idx % d)] = Complex64::new(1.0, 0.0);
            m
        })
        .collect();
    let evolved = evolve_operators(&h, collapse, &units, times, ode).map_err(|e| e.at("flux-driven evolution"))?;
    times
        .iter()
        .zip(evolved)
        .map(|(&t, images)| {
            let phases: Vec<Complex64> = energies.iter().map(|&e| Complex64::from_polar(1.0, e * t)).collect();
            let channel = QuantumChannel::from_images(d, &images)?.then_diagonal(&phases);
            average_gate_fidelity(&channel, target)
        })
        .collect()
}
