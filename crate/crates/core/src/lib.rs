//! Pulse-level quantum programs with reversed schedules.
//!
//! The crate is organised around a small schedule IR ([`pulse_ir`]) that every
//! other layer consumes:
//!
//! - [`device`] describes the simulated machine and keeps π-pulse calibrations.
//! - [`simulator`] evolves statevectors under the rotating-frame drive and
//!   cross-resonance Hamiltonians and samples measurement shots.
//! - [`transforms`] rewrites schedules: reversal, noise folding, `Rx`
//!   decomposition and the hardware-efficient pulse ansatz.
//! - [`noise`] perturbs pulse amplitudes and readout, and tunes the noise
//!   strength against a target per-pulse infidelity.
//! - [`analysis`] estimates fidelity from the probability of successful trials,
//!   runs randomized benchmarking of parameterized pulses, performs zero-noise
//!   extrapolation and cross-resonance Hamiltonian tomography.
//! - [`vqe`] drives a pulse-level variational eigensolver with optional
//!   zero-noise extrapolation inside the optimisation loop.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod analysis;
pub mod cli;
pub mod device;
mod error;
pub mod noise;
pub mod optim;
pub mod pulse_ir;
pub mod rng;
pub mod simulator;
pub mod transforms;
pub mod vqe;

pub use error::{Error, Result};
