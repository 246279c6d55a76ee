//! Controlled-iSWAP gate toolkit.
//!
//! Qubit ordering is `[controls..., targets...]` everywhere, with qubit 0 the
//! leftmost tensor factor (most significant bit of a basis index). A single
//! qubit has `|0⟩ = (1, 0)` and `σᶻ|0⟩ = |0⟩`; relaxation lowers `|1⟩` to `|0⟩`.
//!
//! Frequencies and couplings are angular (rad/s). `jz` is the coefficient of
//! `σᶻσᶻ` and detunings are transition-frequency differences, so a target
//! pair term reads `-(Δ/2)σᶻ_T1 + Σ jzᵢ σᶻ_T1 σᶻᵢ`.

pub mod calibration;
pub mod circuit_quantization;
pub mod dynamics;
pub mod error;
pub mod exponentiation;
pub mod gate_models;
pub mod quantum_core;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex = num_complex::Complex<f64>;

pub type Operator = quantum_core::Operator<f64>;
pub type Operator32 = quantum_core::Operator<f32>;
pub type PureState = quantum_core::PureState<f64>;
pub type PureState32 = quantum_core::PureState<f32>;
pub type DensityMatrix = quantum_core::DensityMatrix<f64>;
pub type DensityMatrix32 = quantum_core::DensityMatrix<f32>;
pub type GateModelParams = gate_models::GateModelParams<f64>;
pub type SwapArrayParams = gate_models::SwapArrayParams<f64>;
pub type CyclicGate = exponentiation::CyclicGate<f64>;
pub type ExponentiationPlan = exponentiation::ExponentiationPlan<f64>;

/// 2π × 10⁶, converts MHz to rad/s.
pub const MHZ: f64 = 2.0 * std::f64::consts::PI * 1e6;
/// 2π × 10⁹, converts GHz to rad/s.
pub const GHZ: f64 = 2.0 * std::f64::consts::PI * 1e9;
pub const NS: f64 = 1e-9;
pub const US: f64 = 1e-6;
