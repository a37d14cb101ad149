use std::f64::consts::{FRAC_PI_2, PI};

use crate::device::DeviceModel;
use crate::pulse_ir::{wrap_angle, ChannelId, Instruction, PulseShape, Schedule};
use crate::simulator::propagator_1q;
use crate::Result;

/// Single-qubit rotations built from the calibrated π/2 pulse and virtual Z
/// phases.
///
/// The calibrated pulse `V` satisfies P(|1⟩) = 1/2 exactly, which makes it
/// `Rz(p)·Rx(π/2)·Rz(q)` up to global phase; `p` and `q` are read off its
/// propagator and compensated with ShiftPhase instructions. A ShiftPhase(φ)
/// acts as the virtual gate `Rz(φ) = exp(−iφZ/2)` at its timestamp.
#[derive(Clone, Copy, Debug)]
pub struct RotationBuilder {
    qubit: usize,
    sx: PulseShape,
    p: f64,
    q: f64,
}

impl RotationBuilder {
    pub fn new(device: &DeviceModel, qubit: usize) -> Result<Self> {
        device.check_channel(ChannelId::drive(qubit))?;
        let sx = device.calibration(qubit)?.sx;
        let local = DeviceModel::new(device.dt, vec![device.qubits[qubit]], Vec::new())?;
        let v = propagator_1q(&Schedule::new().then(Instruction::play(sx, ChannelId::drive(0)))?, &local)?;
        let sum = (v[1][1] / v[0][0]).arg();
        let diff = (v[1][0] / v[0][1]).arg();
        Ok(Self { qubit, sx, p: 0.5 * (sum + diff), q: 0.5 * (sum - diff) })
    }

    pub fn qubit(&self) -> usize {
        self.qubit
    }

    pub fn pulse_duration(&self) -> u32 {
        self.sx.duration
    }

    /// `Rx(θ)` as ShiftPhase, π/2 pulse, ShiftPhase, π/2 pulse, ShiftPhase,
    /// using `Rx(θ) = Rz(−π/2)·Rx(π/2)·Rz(π − θ)·Rx(π/2)·Rz(−π/2)` up to
    /// global phase.
    pub fn rx(&self, theta: f64) -> Result<Schedule> {
        let ch = ChannelId::drive(self.qubit);
        let (p, q) = (self.p, self.q);
        Schedule::new()
            .then(Instruction::shift_phase(wrap_angle(-FRAC_PI_2 - q), ch))?
            .then(Instruction::play(self.sx, ch))?
            .then(Instruction::shift_phase(wrap_angle(PI - theta - q - p), ch))?
            .then(Instruction::play(self.sx, ch))?
            .then(Instruction::shift_phase(wrap_angle(-FRAC_PI_2 - p), ch))
    }

    /// A π/2 rotation about the equatorial axis at angle `phi` from X:
    /// `Rz(φ)·Rx(π/2)·Rz(−φ)`.
    pub fn half_pi(&self, phi: f64) -> Result<Schedule> {
        let ch = ChannelId::drive(self.qubit);
        Schedule::new()
            .then(Instruction::shift_phase(wrap_angle(-self.q - phi), ch))?
            .then(Instruction::play(self.sx, ch))?
            .then(Instruction::shift_phase(wrap_angle(phi - self.p), ch))
    }
}

/// `Rx(theta)` on `qubit` from two calibrated π/2 DRAG pulses.
pub fn build_rx(device: &DeviceModel, qubit: usize, theta: f64) -> Result<Schedule> {
    RotationBuilder::new(device, qubit)?.rx(theta)
}
