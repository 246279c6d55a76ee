//! Gate Hamiltonians and ideal unitaries for controlled-iSWAP gates and swap arrays.

mod cniswap;
mod params;
mod swap_array;

pub use cniswap::{
    controlled_exchange, effective_hamiltonian, evolution_operator, ideal_cniswap,
    ideal_sqrt_iswap, interaction_hamiltonian, target_qubits,
};
pub use params::{GateModelParams, PhaseSign, SwapArrayParams};
pub use swap_array::{
    exchange_hamiltonian, swap_array_hamiltonian, swap_array_ideal_unitary, three_way_block,
    three_way_swap,
};
