use std::f64::consts::FRAC_PI_2;

use super::PauliHamiltonian;
use crate::analysis::{zne_extrapolate, ZneModel};
use crate::device::DeviceModel;
use crate::noise::NoiseConfig;
use crate::pulse_ir::Schedule;
use crate::rng::derive_seed;
use crate::simulator::{parity_expectation, run_distribution, SimOptions};
use crate::transforms::{build_hea_ansatz, fold_schedule, AnsatzSpec, RotationBuilder};
use crate::{Error, Result};

/// Pulses that map the eigenbasis of `pauli` onto the computational basis:
/// `Ry(−π/2)` for X and `Rx(π/2)` for Y, all starting at time zero.
pub fn basis_rotation(device: &DeviceModel, pauli: &str) -> Result<Schedule> {
    let mut out = Schedule::new();
    for (q, c) in pauli.chars().enumerate() {
        let phi = match c {
            'X' => -FRAC_PI_2,
            'Y' => 0.0,
            'I' | 'Z' => continue,
            other => return Err(Error::Hamiltonian(format!("invalid Pauli letter {other:?}"))),
        };
        out = out.overlay(&RotationBuilder::new(device, q)?.half_pi(phi)?)?;
    }
    Ok(out)
}

/// `⟨H⟩` for the ansatz bound to `params`.
///
/// Each non-identity term runs as its own circuit: ansatz, then basis change,
/// folded as a whole when `zne` is set. With `zne` the totals at fold scales 1
/// and 3 are extrapolated linearly to zero noise. Term `i` at scale `s` uses
/// seed index `2·i + (s − 1)/2` for both its noise and shot streams, so the
/// objective is a deterministic function of `params`.
#[allow(clippy::too_many_arguments)]
pub fn energy_expectation(
    h: &PauliHamiltonian,
    spec: &AnsatzSpec,
    params: &[f64],
    device: &DeviceModel,
    noise: Option<&NoiseConfig>,
    options: &SimOptions,
    zne: bool,
) -> Result<f64> {
    if h.n_qubits != device.n_qubits() {
        return Err(Error::Hamiltonian(format!(
            "Hamiltonian acts on {} qubits, device has {}",
            h.n_qubits,
            device.n_qubits()
        )));
    }
    let ansatz = build_hea_ansatz(device, spec, params)?;
    let scales: &[u32] = if zne { &[1, 3] } else { &[1] };
    let mut totals = Vec::with_capacity(scales.len());
    for &scale in scales {
        let mut total = 0.0;
        for (i, term) in h.terms.iter().enumerate() {
            if term.pauli.chars().all(|c| c == 'I') {
                total += term.coeff;
                continue;
            }
            let circuit = fold_schedule(&ansatz.append(&basis_rotation(device, &term.pauli)?), scale)?;
            let index = 2 * i as u64 + u64::from(scale - 1) / 2;
            let term_noise = noise.map(|c| c.with_seed(derive_seed(c.seed, index)));
            let term_options = options.with_seed(derive_seed(options.seed, index));
            let probs = run_distribution(&circuit, device, &term_options, term_noise.as_ref())?;
            total += term.coeff * parity_expectation(&probs, &term.pauli, h.n_qubits)?;
        }
        totals.push((f64::from(scale), total));
    }
    if zne {
        zne_extrapolate(&totals, ZneModel::Linear)
    } else {
        Ok(totals[0].1)
    }
}
