//! Fidelity estimation by reversal, randomized benchmarking of pulse
//! families, zero-noise extrapolation and cross-resonance tomography.

mod fidelity;
mod rb;
mod tomography;
mod zne;

pub use fidelity::{estimate_fidelity, pst};
pub use rb::{
    fit_through_origin, random_sequence, rb_run, PulseFamily, RbCurve, RbPoint, RB_AMP_RANGE, RB_PULSE_DURATION,
};
pub use tomography::{cr_tomography, CrTomographyResult, TomographySample};
pub use zne::{zne_extrapolate, ZneModel};
