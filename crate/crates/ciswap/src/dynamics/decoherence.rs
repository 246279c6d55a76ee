use crate::quantum_core::{embed, sigma_minus, sigma_z};
use crate::{Error, Operator, Result};

/// Per-qubit relaxation and dephasing times in seconds; `f64::INFINITY` disables a channel.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoherenceSpec {
    pub t1: Vec<f64>,
    pub t2: Vec<f64>,
}

impl DecoherenceSpec {
    pub fn uniform(n_qubits: usize, t1: f64, t2: f64) -> Self {
        Self { t1: vec![t1; n_qubits], t2: vec![t2; n_qubits] }
    }

    pub fn disabled(n_qubits: usize) -> Self {
        Self::uniform(n_qubits, f64::INFINITY, f64::INFINITY)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t1.len() != self.t2.len() {
            return Err(Error::InvalidParameter("t1 and t2 lists differ in length".into()));
        }
        for (q, (&t1, &t2)) in self.t1.iter().zip(&self.t2).enumerate() {
            if !(t1 > 0.0) || !(t2 > 0.0) {
                return Err(Error::InvalidParameter(format!("qubit {q}: T1 and T2 must be positive")));
            }
            if t1.is_finite() && t2 > 2.0 * t1 * (1.0 + 1e-12) {
                return Err(Error::InvalidParameter(format!(
                    "qubit {q}: T2 = {t2:.3e} s exceeds 2·T1 = {:.3e} s",
                    2.0 * t1
                )));
            }
        }
        Ok(())
    }

    /// Pure dephasing rate `γ_φ = 1/T2 − 1/(2T1)`.
    pub fn dephasing_rate(&self, qubit: usize) -> f64 {
        (1.0 / self.t2[qubit] - 0.5 / self.t1[qubit]).max(0.0)
    }
}

/// `√(1/T1)·σ⁻` and `√(γ_φ/2)·σᶻ` for every qubit with a nonzero rate.
pub fn collapse_operators(n_qubits: usize, spec: &DecoherenceSpec) -> Result<Vec<Operator>> {
    spec.validate()?;
    if spec.t1.len() != n_qubits {
        return Err(Error::Dimension(format!("{} decoherence entries for {n_qubits} qubits", spec.t1.len())));
    }
    let mut ops = Vec::new();
    for q in 0..n_qubits {
        let relax = 1.0 / spec.t1[q];
        if relax > 0.0 {
            ops.push(embed(&sigma_minus(), q, n_qubits).scale_real(relax.sqrt()));
        }
        let gphi = spec.dephasing_rate(q);
        if gphi > 0.0 {
            ops.push(embed(&sigma_z(), q, n_qubits).scale_real((gphi / 2.0).sqrt()));
        }
    }
    Ok(ops)
}
