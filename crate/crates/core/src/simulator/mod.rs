//! Rotating-frame statevector simulation of schedules and shot sampling.
//!
//! Per qubit, a Drive-channel sample `f` at frame phase `φ` contributes
//! `(Re w·X + Im w·Y)/2` with `w = drive_strength·f·e^{−iφ}`. A Control-channel
//! sample on coupling `(c, t)` contributes the same operator on the target
//! multiplied by `(I − J/(2Δ12)·Z_c)`. The static `−(Δ12/2)·Z_c` term of the
//! cross-resonance Hamiltonian commutes with everything else while the control
//! is not driven and is absorbed into the control qubit's rotating frame.

mod engine;
pub mod linalg;
mod measure;
mod run;
mod state;

use serde::{Deserialize, Serialize};

pub use engine::{evolve, propagator, CompiledSchedule, MAX_PROPAGATOR_QUBITS};
pub(crate) use engine::propagator_1q;
pub use measure::{apply_readout_flips, counts_to_distribution, measure, parity_expectation, sample_counts, Counts};
pub use run::{run_counts, run_distribution};
pub use state::QuantumState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    /// Exact outcome probabilities; `shots` counts noise trajectories.
    Statevector,
    /// Born-rule sampling of `shots` outcomes.
    Shots,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    pub substeps_per_dt: u32,
    pub shots: u64,
    pub seed: u64,
    pub mode: SimMode,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self { substeps_per_dt: 1, shots: 1024, seed: 0, mode: SimMode::Shots }
    }
}

impl SimOptions {
    pub fn statevector() -> Self {
        Self { mode: SimMode::Statevector, shots: 1, ..Self::default() }
    }

    pub fn shots(shots: u64, seed: u64) -> Self {
        Self { shots, seed, ..Self::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// ⟨ψ|P|ψ⟩ for a Pauli string over `IXYZ`, qubit 0 first.
pub fn exact_expectation(state: &QuantumState, pauli: &str) -> crate::Result<f64> {
    state.expectation(pauli)
}
