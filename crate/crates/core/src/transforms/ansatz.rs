use std::f64::consts::PI;

use crate::device::{DeviceModel, GATE_BETA, GATE_DURATION, GATE_SIGMA};
use crate::pulse_ir::{ChannelId, Instruction, PulseShape, Schedule};
use crate::{Error, Result};

/// Layout of a hardware-efficient pulse ansatz.
///
/// Each layer plays one DRAG pulse per qubit (simultaneously, on the drive
/// channels) followed by one GaussianSquare cross-resonance pulse per
/// coupling (one after another, on the control channels). The parameter
/// vector is, per layer: `(amp, angle)` for each entry of `qubits` in order,
/// then `(amp, angle)` for each entry of `couplings` in order.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSpec {
    pub qubits: Vec<usize>,
    /// Indices into the device coupling list.
    pub couplings: Vec<usize>,
    pub layers: usize,
    /// Envelope of the single-qubit pulses; amp and angle are overwritten.
    pub drag: PulseShape,
    /// Envelope of the entangling pulses; amp and angle are overwritten.
    pub cr: PulseShape,
}

impl AnsatzSpec {
    /// All qubits and couplings of `device` with the default envelopes.
    pub fn for_device(device: &DeviceModel, layers: usize) -> Self {
        Self {
            qubits: (0..device.n_qubits()).collect(),
            couplings: (0..device.couplings.len()).collect(),
            layers,
            drag: PulseShape::drag(GATE_DURATION, 0.0, 0.0, GATE_SIGMA, GATE_BETA),
            cr: PulseShape::gaussian_square(320, 0.0, 0.0, 32.0, 192.0),
        }
    }

    pub fn n_params(&self) -> usize {
        self.layers * 2 * (self.qubits.len() + self.couplings.len())
    }

    pub fn layer_duration(&self) -> u64 {
        u64::from(self.drag.duration) + self.couplings.len() as u64 * u64::from(self.cr.duration)
    }

    pub fn validate(&self, device: &DeviceModel) -> Result<()> {
        if self.layers == 0 {
            return Err(Error::Parameter("ansatz needs at least one layer".into()));
        }
        for &q in &self.qubits {
            device.check_channel(ChannelId::drive(q))?;
        }
        for &c in &self.couplings {
            device.check_channel(ChannelId::control(c))?;
        }
        self.drag.validate()?;
        self.cr.validate()
    }
}

/// Maps an unconstrained `(amp, angle)` pair onto a valid pulse: a negative
/// amplitude becomes a phase flip, and magnitudes above one are clipped.
fn bind(template: &PulseShape, amp: f64, angle: f64) -> PulseShape {
    let (amp, angle) = if amp < 0.0 { (-amp, angle + PI) } else { (amp, angle) };
    template.with_amp(amp.min(1.0)).with_angle(angle)
}

/// Binds `params` into the ansatz schedule.
pub fn build_hea_ansatz(device: &DeviceModel, spec: &AnsatzSpec, params: &[f64]) -> Result<Schedule> {
    spec.validate(device)?;
    if params.len() != spec.n_params() {
        return Err(Error::Parameter(format!(
            "ansatz expects {} parameters, got {}",
            spec.n_params(),
            params.len()
        )));
    }
    if params.iter().any(|p| !p.is_finite()) {
        return Err(Error::Parameter("ansatz parameters must be finite".into()));
    }
    let mut s = Schedule::new();
    let mut chunks = params.chunks_exact(2);
    for _ in 0..spec.layers {
        let t0 = s.duration();
        for &q in &spec.qubits {
            let p = chunks.next().expect("length checked");
            s = s.insert(t0, Instruction::play(bind(&spec.drag, p[0], p[1]), ChannelId::drive(q)))?;
        }
        let mut t = t0 + u64::from(spec.drag.duration);
        for &c in &spec.couplings {
            let p = chunks.next().expect("length checked");
            s = s.insert(t, Instruction::play(bind(&spec.cr, p[0], p[1]), ChannelId::control(c)))?;
            t += u64::from(spec.cr.duration);
        }
        s = s.with_duration(t)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_durations() {
        let device = DeviceModel::two_qubit();
        let spec = AnsatzSpec::for_device(&device, 1);
        assert_eq!(spec.n_params(), 6);
        let s = build_hea_ansatz(&device, &spec, &[0.1; 6]).unwrap();
        assert_eq!(s.plays().count(), 3);
        assert_eq!(s.duration(), 160 + 320);
        let spec2 = AnsatzSpec::for_device(&device, 2);
        let s2 = build_hea_ansatz(&device, &spec2, &[0.0; 12]).unwrap();
        assert_eq!(s2.duration(), 2 * (160 + 320));
        assert!(build_hea_ansatz(&device, &spec, &[0.0; 5]).is_err());
    }

    #[test]
    fn negative_amplitudes_flip_phase() {
        let p = bind(&PulseShape::square(4, 0.0, 0.0), -0.3, 0.5);
        assert_eq!(p.amp, 0.3);
        assert_eq!(p.angle, 0.5 + PI);
        assert_eq!(bind(&p, 2.0, 0.0).amp, 1.0);
    }
}
