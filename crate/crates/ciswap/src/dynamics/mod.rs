//! Open-system time evolution, channels and average gate fidelity.

mod channel;
mod decoherence;
mod flux;
mod liouvillian;
mod lindblad;
pub mod ode;
mod simulate;

pub use channel::{
    average_gate_fidelity, channel_from_evolution, haar_average_fidelity, unitary_average_fidelity,
    ChannelBlock, QuantumChannel,
};
pub use decoherence::{collapse_operators, DecoherenceSpec};
pub use flux::{simulate_flux_driven_gate, FluxDrive, FluxGateModel, FluxGateTrajectory, FluxSimOptions};
pub use liouvillian::Liouvillian;
pub use lindblad::{lindblad_evolve, rotating_frame, Drive, TimeDependentHamiltonian, Trajectory};
pub use simulate::{gate_fidelity, simulate_cniswap, simulate_swap_array, simulate_swap_array_at, GateSimulation};
