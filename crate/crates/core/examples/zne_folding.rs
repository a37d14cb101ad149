//! Pulse folding for zero-noise extrapolation. The folded schedule is the same
//! unitary but three times longer, so amplitude noise accumulates three times
//! over, and a linear fit back to scale 0 removes most of it.
//!
//! cargo run --release --example zne_folding

use revpulse::analysis::{zne_extrapolate, ZneModel};
use revpulse::device::DeviceModel;
use revpulse::noise::NoiseConfig;
use revpulse::simulator::linalg::phase_distance;
use revpulse::simulator::{propagator, SimOptions};
use revpulse::transforms::{build_hea_ansatz, fold_schedule, AnsatzSpec};
use revpulse::vqe::{energy_expectation, initial_params, PauliHamiltonian};

fn main() -> revpulse::Result<()> {
    let device = DeviceModel::two_qubit_calibrated();
    let spec = AnsatzSpec::for_device(&device, 2);
    let params = initial_params(&spec, 3);

    let s = build_hea_ansatz(&device, &spec, &params)?;
    let folded = fold_schedule(&s, 3)?;
    let d = phase_distance(&propagator(&s, &device, 1)?, &propagator(&folded, &device, 1)?);
    println!("duration {} → {} dt, propagator distance {d:.2e}", s.duration(), folded.duration());

    let h = PauliHamiltonian::molecule("h2")?;
    let noise = NoiseConfig::new(0.1, 0.0).with_seed(11);
    let options = SimOptions { shots: 2048, ..SimOptions::statevector() };
    let ideal = energy_expectation(&h, &spec, &params, &device, None, &options, false)?;
    let noisy = energy_expectation(&h, &spec, &params, &device, Some(&noise), &options, false)?;
    let mitigated = energy_expectation(&h, &spec, &params, &device, Some(&noise), &options, true)?;
    println!("\nnoiseless  {ideal:.5}");
    println!("noisy      {noisy:.5}  (error {:.2e})", (noisy - ideal).abs());
    println!("ZNE        {mitigated:.5}  (error {:.2e})", (mitigated - ideal).abs());

    let by_hand = zne_extrapolate(&[(1.0, -1.8518), (3.0, -1.8464)], ZneModel::Linear)?;
    println!("\nE(1) = -1.8518, E(3) = -1.8464 → E(0) = {by_hand:.4}");
    Ok(())
}
