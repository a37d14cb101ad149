//! Piecewise-constant propagation of schedules.
//!
//! Each dt sample is held for the whole sample period (zero-order hold) and
//! the step operator exp(−i·H·dt/substeps) is applied `substeps` times. Three
//! step kinds cover the common cases without a matrix exponential:
//!
//! * only drive channels active: one closed-form SU(2) per driven qubit;
//! * one cross-resonance pulse whose control qubit is not driven at the same
//!   time: a target SU(2) conditioned on the control bit;
//! * anything else: a dense exponential of the full Hamiltonian.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::linalg::{drive_step, rz, Mat2};
use super::QuantumState;
use crate::device::DeviceModel;
use crate::pulse_ir::{ChannelId, ChannelKind, Instruction, Schedule};
use crate::{Error, Result};

/// Largest register for which [`propagator`] builds a full matrix.
pub const MAX_PROPAGATOR_QUBITS: usize = 3;

#[derive(Clone, Debug)]
struct Track {
    start: usize,
    end: usize,
    channel: ChannelId,
    play: usize,
    /// Rate times step length for each sample, frame phase folded in.
    steps: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug)]
struct CouplingTerm {
    control: usize,
    target: usize,
    zx_ratio: f64,
}

/// A schedule lowered against a device: per-sample rotation vectors for every
/// Play, ready to be evolved repeatedly (for example with different noise
/// scale factors).
#[derive(Clone, Debug)]
pub struct CompiledSchedule {
    n_qubits: usize,
    duration: usize,
    substeps: u32,
    tracks: Vec<Track>,
    couplings: Vec<CouplingTerm>,
    frames: Vec<f64>,
    amps: Vec<f64>,
}

impl CompiledSchedule {
    pub fn new(schedule: &Schedule, device: &DeviceModel, substeps: u32) -> Result<Self> {
        if substeps == 0 {
            return Err(Error::Parameter("substeps_per_dt must be positive".into()));
        }
        let tau = device.dt / f64::from(substeps);
        let mut shifts: BTreeMap<ChannelId, Vec<(u64, f64)>> = BTreeMap::new();
        for (t, inst) in schedule.entries() {
            device.check_channel(inst.channel())?;
            if let Instruction::ShiftPhase { phase, channel } = inst {
                shifts.entry(*channel).or_default().push((*t, *phase));
            }
        }
        let mut frames = vec![0.0; device.n_qubits()];
        for (channel, list) in &shifts {
            frames[device.frame_qubit(*channel)] += list.iter().map(|(_, p)| p).sum::<f64>();
        }

        let mut tracks = Vec::new();
        let mut amps = Vec::new();
        for (t, inst) in schedule.entries() {
            let Instruction::Play { shape, channel } = inst else { continue };
            let samples = shape.envelope_samples()?;
            let strength = device.channel_strength(*channel) * tau;
            let list = shifts.get(channel).map(Vec::as_slice).unwrap_or(&[]);
            let mut k = 0;
            let mut phase = 0.0;
            let steps = samples
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let x = t + i as u64;
                    while k < list.len() && list[k].0 <= x {
                        phase += list[k].1;
                        k += 1;
                    }
                    f * Complex64::from_polar(strength, -phase)
                })
                .collect();
            let start = *t as usize;
            tracks.push(Track { start, end: start + samples.len(), channel: *channel, play: amps.len(), steps });
            amps.push(shape.amp);
        }
        tracks.sort_by_key(|tr| tr.start);

        let couplings = device
            .couplings
            .iter()
            .map(|c| CouplingTerm { control: c.control, target: c.target, zx_ratio: c.zx_ratio() })
            .collect();
        Ok(Self {
            n_qubits: device.n_qubits(),
            duration: schedule.duration() as usize,
            substeps,
            tracks,
            couplings,
            frames,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Amplitude of each Play, in schedule entry order.
    pub fn play_amps(&self) -> &[f64] {
        &self.amps
    }

    /// Evolves `state` through the schedule. `scales`, if given, multiplies
    /// the envelope of the i-th Play (entry order) by `scales[i]`.
    pub fn evolve(&self, state: &mut QuantumState, scales: Option<&[f64]>) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Parameter(format!(
                "state has {} qubits, device has {}",
                state.n_qubits(),
                self.n_qubits
            )));
        }
        if let Some(s) = scales {
            if s.len() != self.amps.len() {
                return Err(Error::Parameter("one scale factor per Play is required".into()));
            }
        }
        let n = self.n_qubits;
        let mut active: Vec<usize> = Vec::new();
        let mut next = 0;
        let mut drive = vec![Complex64::new(0.0, 0.0); n];
        let mut driven = vec![false; n];
        let mut crs: Vec<(usize, Complex64)> = Vec::new();
        let mut t = 0;
        while t < self.duration {
            active.retain(|&i| self.tracks[i].end > t);
            while next < self.tracks.len() && self.tracks[next].start <= t {
                active.push(next);
                next += 1;
            }
            if active.is_empty() {
                match self.tracks.get(next) {
                    Some(tr) => {
                        t = tr.start;
                        continue;
                    }
                    None => break,
                }
            }
            drive.iter_mut().for_each(|d| *d = Complex64::new(0.0, 0.0));
            driven.iter_mut().for_each(|d| *d = false);
            crs.clear();
            for &i in &active {
                let tr = &self.tracks[i];
                let scale = scales.map_or(1.0, |s| s[tr.play]);
                let r = tr.steps[t - tr.start] * scale;
                match tr.channel.kind {
                    ChannelKind::Drive => {
                        drive[tr.channel.index] += r;
                        driven[tr.channel.index] = true;
                    }
                    ChannelKind::Control => crs.push((tr.channel.index, r)),
                }
            }
            self.step(state, &drive, &driven, &crs);
            t += 1;
        }
        for (q, &phi) in self.frames.iter().enumerate() {
            if phi != 0.0 {
                state.apply_1q(q, &rz(phi));
            }
        }
        Ok(())
    }

    fn step(&self, state: &mut QuantumState, drive: &[Complex64], driven: &[bool], crs: &[(usize, Complex64)]) {
        let reps = self.substeps;
        match crs {
            [] => {
                for q in 0..self.n_qubits {
                    if driven[q] {
                        let u = drive_step(drive[q]);
                        for _ in 0..reps {
                            state.apply_1q(q, &u);
                        }
                    }
                }
            }
            [(c, r)] if !driven[self.couplings[*c].control] => {
                let cp = self.couplings[*c];
                let base = drive[cp.target];
                let u0 = drive_step(base + r * (1.0 - cp.zx_ratio));
                let u1 = drive_step(base + r * (1.0 + cp.zx_ratio));
                for q in 0..self.n_qubits {
                    if driven[q] && q != cp.target {
                        let u = drive_step(drive[q]);
                        for _ in 0..reps {
                            state.apply_1q(q, &u);
                        }
                    }
                }
                for _ in 0..reps {
                    state.apply_conditional(cp.control, cp.target, &u0, &u1);
                }
            }
            _ => {
                let u = self.dense_step(drive, crs);
                for _ in 0..reps {
                    let psi = DVector::from_column_slice(state.amplitudes());
                    let out = &u * psi;
                    state.amps_mut().copy_from_slice(out.as_slice());
                }
            }
        }
    }

    fn dense_step(&self, drive: &[Complex64], crs: &[(usize, Complex64)]) -> DMatrix<Complex64> {
        let n = self.n_qubits;
        let dim = 1 << n;
        let bit = |q: usize| 1usize << (n - 1 - q);
        let mut h = DMatrix::<Complex64>::zeros(dim, dim);
        // (Re r·X + Im r·Y)/2 on qubit q, each column weighted by `weight`.
        let mut add = |q: usize, r: Complex64, weight: &dyn Fn(usize) -> f64| {
            let b = bit(q);
            for i in 0..dim {
                // ⟨i^b| (Re r X + Im r Y)/2 |i⟩ = r/2 if bit is 0, conj(r)/2 if 1.
                let elem = if i & b == 0 { r / 2.0 } else { r.conj() / 2.0 };
                h[(i ^ b, i)] += elem * weight(i);
            }
        };
        for (q, &r) in drive.iter().enumerate() {
            if r != Complex64::new(0.0, 0.0) {
                add(q, r, &|_| 1.0);
            }
        }
        for &(c, r) in crs {
            let cp = self.couplings[c];
            let cb = bit(cp.control);
            add(cp.target, r, &move |i| if i & cb == 0 { 1.0 - cp.zx_ratio } else { 1.0 + cp.zx_ratio });
        }
        (h * Complex64::new(0.0, -1.0)).exp()
    }
}

/// Evolves `initial` under `schedule`, returning the state in the frame left
/// by the schedule's accumulated ShiftPhase values (each ShiftPhase acts as a
/// virtual Z rotation at its timestamp).
pub fn evolve(
    schedule: &Schedule,
    device: &DeviceModel,
    initial: &QuantumState,
    substeps: u32,
) -> Result<QuantumState> {
    let compiled = CompiledSchedule::new(schedule, device, substeps)?;
    let mut state = initial.clone();
    compiled.evolve(&mut state, None)?;
    Ok(state)
}

/// Full unitary of a schedule, built column by column.
pub fn propagator(schedule: &Schedule, device: &DeviceModel, substeps: u32) -> Result<DMatrix<Complex64>> {
    let n = device.n_qubits();
    if n > MAX_PROPAGATOR_QUBITS {
        return Err(Error::Capability(format!(
            "propagator limited to {MAX_PROPAGATOR_QUBITS} qubits, device has {n}"
        )));
    }
    let compiled = CompiledSchedule::new(schedule, device, substeps)?;
    let dim = 1 << n;
    let mut u = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut state = QuantumState::basis(n, col);
        compiled.evolve(&mut state, None)?;
        u.set_column(col, &DVector::from_column_slice(state.amplitudes()));
    }
    Ok(u)
}

/// Convenience for tests and calibration: the 2×2 propagator of a
/// single-qubit device.
pub(crate) fn propagator_1q(schedule: &Schedule, device: &DeviceModel) -> Result<Mat2> {
    let u = propagator(schedule, device, 1)?;
    if u.nrows() != 2 {
        return Err(Error::Capability("expected a single-qubit device".into()));
    }
    Ok([[u[(0, 0)], u[(0, 1)]], [u[(1, 0)], u[(1, 1)]]])
}
