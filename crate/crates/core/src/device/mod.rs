//! Simulated machine description and the per-qubit calibration store.
//!
//! All rates are angular frequencies in rad/s (ħ = 1). The JSON form uses Hz
//! and is converted on load.

mod calibration;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::pulse_ir::{ChannelId, ChannelKind, PulseShape};
use crate::{Error, Result};

pub use calibration::{calibrate_sx, default_sweep, fit_rabi, rabi_calibrate, RabiFit};

/// Sample period used when a device file omits `dt_s`: 160 dt = 35.56 ns.
pub const DEFAULT_DT: f64 = 2.0 / 9.0 * 1e-9;

/// Duration of the calibrated single-qubit gate pulse, in dt.
pub const GATE_DURATION: u32 = 160;
pub const GATE_SIGMA: f64 = 40.0;
pub const GATE_BETA: f64 = 0.5;

const BUILTIN_TWO_QUBIT: &str = include_str!("../../data/devices/two_qubit.json");

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitParams {
    /// Qubit frequency, rad/s. Only enters through the rotating frame.
    pub frequency: f64,
    /// Rabi rate per unit envelope amplitude, rad/s.
    pub drive_strength: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    pub control: usize,
    pub target: usize,
    /// Exchange coupling, rad/s.
    pub j: f64,
    /// Control minus target frequency, rad/s.
    pub delta12: f64,
    /// Rate per unit amplitude on the control channel, rad/s.
    pub cr_drive_strength: f64,
}

impl Coupling {
    /// Strength of the conditional term relative to the direct target drive.
    pub fn zx_ratio(&self) -> f64 {
        self.j / (2.0 * self.delta12)
    }
}

/// Calibrated π and π/2 pulses for one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitCalibration {
    pub x: PulseShape,
    pub sx: PulseShape,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeviceModel {
    pub dt: f64,
    pub qubits: Vec<QubitParams>,
    pub couplings: Vec<Coupling>,
    pub calibrations: BTreeMap<usize, QubitCalibration>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dt_s: Option<f64>,
    qubits: Vec<QubitFile>,
    #[serde(default)]
    couplings: Vec<CouplingFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QubitFile {
    freq_hz: f64,
    drive_strength_hz: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CouplingFile {
    control: usize,
    target: usize,
    j_hz: f64,
    delta12_hz: f64,
    cr_drive_strength_hz: f64,
}

const TWO_PI: f64 = 2.0 * PI;

impl DeviceModel {
    /// Builds and validates a device from rad/s parameters.
    pub fn new(dt: f64, qubits: Vec<QubitParams>, couplings: Vec<Coupling>) -> Result<Self> {
        let device = Self { dt, qubits, couplings, calibrations: BTreeMap::new() };
        device.validate()?;
        Ok(device)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DeviceFile = serde_json::from_str(text)?;
        let qubits = file
            .qubits
            .iter()
            .map(|q| QubitParams {
                frequency: TWO_PI * q.freq_hz,
                drive_strength: TWO_PI * q.drive_strength_hz,
            })
            .collect();
        let couplings = file
            .couplings
            .iter()
            .map(|c| Coupling {
                control: c.control,
                target: c.target,
                j: TWO_PI * c.j_hz,
                delta12: TWO_PI * c.delta12_hz,
                cr_drive_strength: TWO_PI * c.cr_drive_strength_hz,
            })
            .collect();
        Self::new(file.dt_s.unwrap_or(DEFAULT_DT), qubits, couplings)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Device(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = DeviceFile {
            dt_s: Some(self.dt),
            qubits: self
                .qubits
                .iter()
                .map(|q| QubitFile {
                    freq_hz: q.frequency / TWO_PI,
                    drive_strength_hz: q.drive_strength / TWO_PI,
                })
                .collect(),
            couplings: self
                .couplings
                .iter()
                .map(|c| CouplingFile {
                    control: c.control,
                    target: c.target,
                    j_hz: c.j / TWO_PI,
                    delta12_hz: c.delta12 / TWO_PI,
                    cr_drive_strength_hz: c.cr_drive_strength / TWO_PI,
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    /// The bundled two-qubit device (one coupling, control 0 → target 1),
    /// without calibrations.
    pub fn two_qubit() -> Self {
        Self::from_json(BUILTIN_TWO_QUBIT).expect("bundled device file is valid")
    }

    /// The bundled device with both qubits calibrated.
    pub fn two_qubit_calibrated() -> Self {
        let mut device = Self::two_qubit();
        device.calibrate_all().expect("bundled device calibrates");
        device
    }

    /// A single qubit taken from the bundled device, without couplings.
    pub fn single_qubit() -> Self {
        let base = Self::two_qubit();
        Self::new(base.dt, vec![base.qubits[0]], Vec::new()).expect("valid")
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Device(format!("dt must be positive, got {}", self.dt)));
        }
        if self.qubits.is_empty() {
            return Err(Error::Device("device has no qubits".into()));
        }
        for (i, q) in self.qubits.iter().enumerate() {
            if !(q.drive_strength > 0.0 && q.drive_strength.is_finite()) || !q.frequency.is_finite() {
                return Err(Error::Device(format!("qubit {i}: drive strength must be positive")));
            }
        }
        let n = self.qubits.len();
        for (i, c) in self.couplings.iter().enumerate() {
            if c.control >= n || c.target >= n {
                return Err(Error::Device(format!("coupling {i}: qubit index out of range")));
            }
            if c.control == c.target {
                return Err(Error::Device(format!("coupling {i}: control equals target")));
            }
            if c.delta12 == 0.0 || !c.delta12.is_finite() {
                return Err(Error::Device(format!("coupling {i}: delta12 must be nonzero")));
            }
            if !(c.j.is_finite() && c.cr_drive_strength.is_finite() && c.cr_drive_strength >= 0.0) {
                return Err(Error::Device(format!("coupling {i}: invalid J or CR drive strength")));
            }
        }
        Ok(())
    }

    pub fn check_channel(&self, channel: ChannelId) -> Result<()> {
        let limit = match channel.kind {
            ChannelKind::Drive => self.qubits.len(),
            ChannelKind::Control => self.couplings.len(),
        };
        if channel.index >= limit {
            return Err(Error::Channel(format!("channel {channel} not present on device")));
        }
        Ok(())
    }

    /// Qubit whose frame a channel rotates: the driven qubit, or the target of
    /// a cross-resonance coupling.
    pub fn frame_qubit(&self, channel: ChannelId) -> usize {
        match channel.kind {
            ChannelKind::Drive => channel.index,
            ChannelKind::Control => self.couplings[channel.index].target,
        }
    }

    /// Rate in rad/s per unit amplitude for a channel.
    pub fn channel_strength(&self, channel: ChannelId) -> f64 {
        match channel.kind {
            ChannelKind::Drive => self.qubits[channel.index].drive_strength,
            ChannelKind::Control => self.couplings[channel.index].cr_drive_strength,
        }
    }

    pub fn calibration(&self, qubit: usize) -> Result<&QubitCalibration> {
        self.calibrations.get(&qubit).ok_or(Error::CalibrationMissing(qubit))
    }

    /// Default gate envelope (amplitude still to be calibrated).
    pub fn gate_shape() -> PulseShape {
        PulseShape::drag(GATE_DURATION, 1.0, 0.0, GATE_SIGMA, GATE_BETA)
    }

    /// Calibrates π and π/2 DRAG pulses on every qubit.
    pub fn calibrate_all(&mut self) -> Result<()> {
        let sweep = default_sweep();
        for q in 0..self.qubits.len() {
            rabi_calibrate(self, q, &Self::gate_shape(), &sweep)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn builtin_device_loads() {
        let d = DeviceModel::two_qubit();
        assert_eq!(d.n_qubits(), 2);
        assert_eq!(d.couplings.len(), 1);
        assert_relative_eq!(d.dt * 160.0, 35.555_555_555_555_56e-9, max_relative = 1e-12);
        assert_relative_eq!(d.couplings[0].zx_ratio(), 0.1, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_devices() {
        let same = r#"{"qubits":[{"freq_hz":5e9,"drive_strength_hz":1e7}],
            "couplings":[{"control":0,"target":0,"j_hz":1e6,"delta12_hz":1e7,"cr_drive_strength_hz":1e7}]}"#;
        assert!(matches!(DeviceModel::from_json(same), Err(Error::Device(_))));
        let dt = r#"{"dt_s":0,"qubits":[{"freq_hz":5e9,"drive_strength_hz":1e7}]}"#;
        assert!(DeviceModel::from_json(dt).is_err());
        let range = r#"{"qubits":[{"freq_hz":5e9,"drive_strength_hz":1e7}],
            "couplings":[{"control":0,"target":3,"j_hz":1e6,"delta12_hz":1e7,"cr_drive_strength_hz":1e7}]}"#;
        assert!(DeviceModel::from_json(range).is_err());
        assert!(matches!(DeviceModel::from_json("{"), Err(Error::Json(_))));
    }

    #[test]
    fn json_round_trip_preserves_rates() {
        let d = DeviceModel::two_qubit();
        let back = DeviceModel::from_json(&d.to_json().unwrap()).unwrap();
        for (a, b) in d.qubits.iter().zip(&back.qubits) {
            assert_relative_eq!(a.drive_strength, b.drive_strength, max_relative = 1e-14);
        }
        assert_relative_eq!(d.couplings[0].j, back.couplings[0].j, max_relative = 1e-14);
    }

    #[test]
    fn channel_checks() {
        let d = DeviceModel::two_qubit();
        assert!(d.check_channel(ChannelId::drive(1)).is_ok());
        assert!(d.check_channel(ChannelId::drive(2)).is_err());
        assert!(d.check_channel(ChannelId::control(1)).is_err());
        assert_eq!(d.frame_qubit(ChannelId::control(0)), 1);
        assert!(matches!(d.calibration(0), Err(Error::CalibrationMissing(0))));
    }
}
