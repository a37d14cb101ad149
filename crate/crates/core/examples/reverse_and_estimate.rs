//! Builds a small two-qubit program, reverses it and estimates its fidelity
//! from the probability of returning to |00⟩, with and without noise.
//!
//! cargo run --release --example reverse_and_estimate

use revpulse::analysis::estimate_fidelity;
use revpulse::device::DeviceModel;
use revpulse::noise::NoiseConfig;
use revpulse::pulse_ir::{ChannelId, Instruction, PulseShape, Schedule};
use revpulse::simulator::linalg::phase_distance;
use revpulse::simulator::{propagator, SimOptions};
use revpulse::transforms::reverse_schedule;

fn main() -> revpulse::Result<()> {
    let device = DeviceModel::two_qubit_calibrated();
    let program = Schedule::new()
        .then(Instruction::play(PulseShape::drag(160, 0.4, 0.3, 40.0, 0.5), ChannelId::drive(0)))?
        .then(Instruction::shift_phase(0.7, ChannelId::drive(1)))?
        .then(Instruction::play(PulseShape::gaussian(160, 0.6, 1.2, 40.0), ChannelId::drive(1)))?
        .then(Instruction::play(PulseShape::gaussian_square(480, 0.5, 0.0, 32.0, 320.0), ChannelId::control(0)))?;
    let reversed = reverse_schedule(&program)?;
    println!("program:  {} entries, {} dt", program.len(), program.duration());
    println!("reversed: {} entries, {} dt", reversed.len(), reversed.duration());
    println!("{}", reversed.to_json()?);

    let u = propagator(&program.append(&reversed), &device, 1)?;
    let identity = nalgebra::DMatrix::identity(4, 4);
    println!("\n|U·U_rev − I| (up to phase) = {:.3e}", phase_distance(&u, &identity));

    let options = SimOptions::shots(4096, 1);
    println!("\n{:>8} {:>8} {:>10}", "σ_amp", "p_read", "fidelity");
    for (sigma, p_read) in [(0.0, 0.0), (0.02, 0.0), (0.05, 0.0), (0.05, 0.01)] {
        let noise = NoiseConfig::new(sigma, p_read).with_seed(7);
        let f = estimate_fidelity(&program, &device, Some(&noise), &options)?;
        println!("{sigma:>8} {p_read:>8} {f:>10.4}");
    }
    Ok(())
}
