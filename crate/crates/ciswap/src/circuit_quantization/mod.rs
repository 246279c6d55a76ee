//! Lumped-element transmon circuit to gate-model parameters.
//!
//! Node order is `[controls..., T1, TB, T2]` for every per-node vector.

mod params;
mod pipeline;
pub mod reference;

pub use params::{CircuitParams, Nodes};
pub use pipeline::{
    capacitance_matrix, control_exchange_shifts, derive_quantities, dressed_params, flux_derivatives, gate_params_from_circuit,
    perturbative_gate_params, quality_metrics, quality_metrics_with, DerivedCircuitQuantities, DerivedGateParams,
    DressedParams, FluxDerivatives, QualityMetrics, CHARGING_ENERGY_PER_INV_FF, DISPERSIVE_THRESHOLD,
    DISPERSIVE_WARNING, FLUX_STEP, MIN_CONTROL_DETUNING,
};

/// Converts a fraction of the flux quantum to the internal `Φ₀/2π` units.
pub fn flux_from_fraction(fraction: f64) -> f64 {
    2.0 * std::f64::consts::PI * fraction
}

pub fn flux_to_fraction(flux: f64) -> f64 {
    flux / (2.0 * std::f64::consts::PI)
}
