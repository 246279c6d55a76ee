use num_complex::Complex;

use crate::{Error, Real, Result};

/// Phase picked up by the swapped amplitudes of an iSWAP.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseSign {
    MinusI,
    PlusI,
}

impl PhaseSign {
    /// `exp(−i·J·X·t)` swaps with `−i` for positive `J`.
    pub fn from_jx<T: Real>(jx: T) -> Self {
        if jx < T::zero() {
            PhaseSign::PlusI
        } else {
            PhaseSign::MinusI
        }
    }

    pub fn off_diagonal<T: Real>(self) -> Complex<T> {
        match self {
            PhaseSign::MinusI => Complex::new(T::zero(), -T::one()),
            PhaseSign::PlusI => Complex::new(T::zero(), T::one()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateModelParams<T: Real> {
    pub n_controls: usize,
    /// Lab-frame transition frequencies `[controls..., T1, T2]`, informational only.
    pub omega: Vec<T>,
    /// `ω_T1 − ω_T2`.
    pub delta: T,
    pub jz: Vec<T>,
    pub jx: T,
    pub phase_sign: PhaseSign,
}

impl<T: Real> GateModelParams<T> {
    /// Parameters on resonance: `Δ = −2 Σ jzᵢ` brings T1 and T2 together when all controls read `|1⟩`.
    pub fn resonant(jz: Vec<T>, jx: T) -> Self {
        let n = jz.len();
        let delta = -T::lit(2.0) * jz.iter().fold(T::zero(), |a, &b| a + b);
        Self {
            n_controls: n,
            omega: vec![T::zero(); n + 2],
            delta,
            jz,
            jx,
            phase_sign: PhaseSign::from_jx(jx),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.jz.len() != self.n_controls {
            return Err(Error::InvalidParameter(format!(
                "{} Ising couplings for {} controls",
                self.jz.len(),
                self.n_controls
            )));
        }
        if !self.omega.is_empty() && self.omega.len() != self.n_controls + 2 {
            return Err(Error::InvalidParameter(format!("{} frequencies for {} qubits", self.omega.len(), self.n_controls + 2)));
        }
        let finite = self.delta.is_finite()
            && self.jx.is_finite()
            && self.jz.iter().chain(&self.omega).all(|x| x.is_finite());
        if !finite {
            return Err(Error::NonFinite("gate model parameters"));
        }
        if self.phase_sign != PhaseSign::from_jx(self.jx) && !self.jx.is_zero() {
            return Err(Error::InvalidParameter("phase_sign disagrees with the sign of jx".into()));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_controls + 2
    }

    pub fn resonance_error(&self) -> T {
        (self.delta + T::lit(2.0) * self.jz.iter().fold(T::zero(), |a, &b| a + b)).abs()
    }

    pub fn is_resonant(&self, rel_tol: T) -> bool {
        let scale = self
            .jz
            .iter()
            .fold(self.delta.abs().max(self.jx.abs()), |m, z| m.max(z.abs()))
            .max(T::min_positive_value());
        self.resonance_error() <= rel_tol * scale
    }

    /// `π / (2|J^x|)`.
    pub fn gate_time(&self) -> T {
        T::FRAC_PI_2() / self.jx.abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwapArrayParams<T: Real> {
    pub n_targets: usize,
    pub omega_bar: T,
    /// Target transition frequency offsets from `omega_bar`.
    pub detunings: Vec<T>,
    pub jz: Vec<T>,
    pub jx: T,
    pub control_freqs: Vec<T>,
}

impl<T: Real> SwapArrayParams<T> {
    /// Detunings `Δᵢ = −2 jzᵢ` put every target with its control in `|1⟩` at `omega_bar`.
    pub fn resonant(omega_bar: T, jz: Vec<T>, jx: T, control_freqs: Vec<T>) -> Self {
        let detunings = jz.iter().map(|&z| -T::lit(2.0) * z).collect();
        Self { n_targets: jz.len(), omega_bar, detunings, jz, jx, control_freqs }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_targets;
        if n < 2 {
            return Err(Error::InvalidParameter("swap array needs at least two targets".into()));
        }
        if self.detunings.len() != n || self.jz.len() != n || self.control_freqs.len() != n {
            return Err(Error::InvalidParameter(format!("per-target lists must have length {n}")));
        }
        let finite = self.omega_bar.is_finite()
            && self.jx.is_finite()
            && self.detunings.iter().chain(&self.jz).chain(&self.control_freqs).all(|x| x.is_finite());
        if !finite {
            return Err(Error::NonFinite("swap array parameters"));
        }
        Ok(())
    }

    pub fn is_resonant(&self, rel_tol: T) -> bool {
        self.detunings.iter().zip(&self.jz).all(|(&d, &z)| {
            (d + T::lit(2.0) * z).abs() <= rel_tol * z.abs().max(T::min_positive_value())
        })
    }

    pub fn gate_time(&self) -> T {
        T::FRAC_PI_2() / self.jx.abs()
    }
}
