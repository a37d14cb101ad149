//! Pulse-level variational eigensolver with optional zero-noise
//! extrapolation inside the loop.

mod energy;
mod hamiltonian;
mod optimize;

pub use energy::{basis_rotation, energy_expectation};
pub use hamiltonian::{PauliHamiltonian, PauliTerm, MAX_EXACT_QUBITS};
pub use optimize::{initial_params, optimize, VqeConfig, VqeResult};
