#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::Rng;
use revpulse::device::DeviceModel;
use revpulse::pulse_ir::{ChannelId, Instruction, PulseShape, Schedule};
use revpulse::rng::stream;

pub fn random_shape(rng: &mut impl Rng) -> PulseShape {
    let duration = rng.random_range(16..=320u32);
    let amp = rng.random_range(0.0..=1.0);
    let angle = rng.random_range(0.0..TAU);
    let sigma = rng.random_range(2.0..=f64::from(duration) / 4.0);
    match rng.random_range(0..4) {
        0 => PulseShape::square(duration, amp, angle),
        1 => PulseShape::gaussian(duration, amp, angle, sigma),
        2 => PulseShape::drag(duration, amp, angle, sigma, rng.random_range(-1.0..=1.0)),
        _ => {
            let width = rng.random_range(0.0..=f64::from(duration));
            PulseShape::gaussian_square(duration, amp, angle, sigma, width)
        }
    }
}

/// A random schedule for `device` with `pulses` plays spread over every
/// channel, random gaps, and ShiftPhases sprinkled in between.
pub fn random_schedule(device: &DeviceModel, pulses: usize, seed: u64) -> Schedule {
    let mut rng = stream(seed);
    let mut channels: Vec<ChannelId> = (0..device.n_qubits()).map(ChannelId::drive).collect();
    channels.extend((0..device.couplings.len()).map(ChannelId::control));
    let mut ends = vec![0u64; channels.len()];
    let mut s = Schedule::new();
    for _ in 0..pulses {
        let c = rng.random_range(0..channels.len());
        let mut t = ends[c] + rng.random_range(0..40u64);
        if rng.random_bool(0.4) {
            s = s.insert(t, Instruction::shift_phase(rng.random_range(-TAU..TAU), channels[c])).unwrap();
        }
        if rng.random_bool(0.1) {
            let d = rng.random_range(1..30u64);
            s = s.insert(t, Instruction::delay(d, channels[c])).unwrap();
            t += d;
        }
        let shape = random_shape(&mut rng);
        ends[c] = t + u64::from(shape.duration);
        s = s.insert(t, Instruction::play(shape, channels[c])).unwrap();
    }
    s
}

/// A 1- or 2-qubit device and a schedule with 1–50 pulses, both drawn from `seed`.
pub fn random_case(seed: u64) -> (DeviceModel, Schedule) {
    let mut rng = stream(seed ^ 0x5eed);
    let device = if rng.random_bool(0.5) { DeviceModel::single_qubit() } else { DeviceModel::two_qubit() };
    let pulses = rng.random_range(1..=50);
    let s = random_schedule(&device, pulses, seed);
    (device, s)
}
