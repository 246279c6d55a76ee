use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operator is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("operator is not diagonal")]
    NotDiagonal,
    #[error("singular matrix")]
    Singular,
    #[error("parameters are not resonant ({0}); simulate the exact Hamiltonian instead")]
    NotResonant(String),
    #[error("integration failed at t = {time:.6e} s: {reason}")]
    Integration { time: f64, reason: String },
    #[error("flux {flux:.6} (Φ₀/2π units) outside the domain cos(2Φ) > 0")]
    FluxDomain { flux: f64 },
    #[error("perturbation theory invalid: {0}")]
    Perturbative(String),
    #[error("dispersive condition violated for {coupler}: |g/Δ| = {ratio:.4}")]
    Dispersive { coupler: &'static str, ratio: f64 },
    #[error("{failed} of {total} pipeline samples failed")]
    TooManyFailures { failed: usize, total: usize },
    #[error("no feasible candidate after search; best cost {best_cost:.4e}")]
    NoFeasible {
        best: Box<crate::circuit_quantization::CircuitParams>,
        best_cost: f64,
    },
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at(self, stage: &'static str) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }
}
