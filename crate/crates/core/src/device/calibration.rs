//! Rabi amplitude calibration.

use std::f64::consts::PI;

use super::{DeviceModel, QubitCalibration};
use crate::pulse_ir::{ChannelId, Instruction, PulseShape, Schedule};
use crate::simulator::{CompiledSchedule, QuantumState};
use crate::{Error, Result};

/// Least-squares fit of `P(|1⟩) = a·sin²(c·amp) + b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RabiFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Sum of squared residuals.
    pub residual: f64,
}

impl RabiFit {
    /// Amplitude of the first maximum.
    pub fn pi_amp(&self) -> f64 {
        PI / (2.0 * self.c)
    }
}

/// 41 evenly spaced amplitudes over `[0, 1]`.
pub fn default_sweep() -> Vec<f64> {
    (0..=40).map(|i| f64::from(i) / 40.0).collect()
}

fn linear_fit(c: f64, amps: &[f64], p1: &[f64]) -> (f64, f64, f64) {
    let n = amps.len() as f64;
    let xs: Vec<f64> = amps.iter().map(|a| (c * a).sin().powi(2)).collect();
    let (sx, sy) = (xs.iter().sum::<f64>(), p1.iter().sum::<f64>());
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(p1).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    let (a, b) = if det.abs() < 1e-14 * n * n { (0.0, sy / n) } else { ((n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det) };
    let res = xs.iter().zip(p1).map(|(x, y)| (a * x + b - y).powi(2)).sum();
    (a, b, res)
}

/// Fits Rabi data with a coarse grid over the frequency `c` followed by
/// iterated three-point parabolic refinement of the residual minimum.
pub fn fit_rabi(amps: &[f64], p1: &[f64]) -> Result<RabiFit> {
    let mut distinct: Vec<f64> = amps.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 4 || amps.len() != p1.len() {
        return Err(Error::Calibration(format!(
            "need at least 4 distinct amplitudes to fit a Rabi curve, got {}",
            distinct.len()
        )));
    }
    let span = distinct[distinct.len() - 1] - distinct[0];
    let amax = distinct[distinct.len() - 1];
    let c_lo = PI / (8.0 * amax);
    let c_hi = PI * (distinct.len() - 1) as f64 / (2.0 * span);
    const GRID: usize = 4000;
    let grid: Vec<f64> = (0..GRID).map(|i| c_lo + (c_hi - c_lo) * i as f64 / (GRID - 1) as f64).collect();
    let res: Vec<f64> = grid.iter().map(|&c| linear_fit(c, amps, p1).2).collect();
    // Prefer the lowest frequency among near-equal minima (aliases).
    let best = res.iter().copied().fold(f64::INFINITY, f64::min);
    let i = res.iter().position(|&r| r <= best + 1e-12 * (1.0 + best)).unwrap();
    if i == 0 || i == GRID - 1 {
        return Err(Error::Calibration("Rabi frequency at the edge of the search range".into()));
    }
    let objective = |c: f64| linear_fit(c, amps, p1).2;
    let c = parabolic_min(objective, grid[i - 1], grid[i], grid[i + 1]);
    let (a, b, residual) = linear_fit(c, amps, p1);
    let mean = p1.iter().sum::<f64>() / p1.len() as f64;
    let total: f64 = p1.iter().map(|y| (y - mean).powi(2)).sum();
    if a < 0.1 || total == 0.0 || residual > 0.05 * total {
        return Err(Error::Calibration(format!(
            "data is not oscillatory (fitted a = {a:.3}, residual fraction {:.3})",
            if total > 0.0 { residual / total } else { 1.0 }
        )));
    }
    Ok(RabiFit { a, b, c, residual })
}

/// Minimizes `f` inside the bracket `lo < mid < hi` (with `f(mid)` below both
/// ends) by repeated parabolic interpolation, falling back to a golden step
/// when the vertex is unusable.
fn parabolic_min(f: impl Fn(f64) -> f64, mut lo: f64, mut mid: f64, mut hi: f64) -> f64 {
    let (mut flo, mut fmid, mut fhi) = (f(lo), f(mid), f(hi));
    for _ in 0..200 {
        if hi - lo <= 1e-14 * mid.abs().max(1.0) {
            break;
        }
        let num = (mid - lo).powi(2) * (fmid - fhi) - (mid - hi).powi(2) * (fmid - flo);
        let den = (mid - lo) * (fmid - fhi) - (mid - hi) * (fmid - flo);
        let mut x = if den != 0.0 { mid - 0.5 * num / den } else { f64::NAN };
        let margin = 1e-3 * (hi - lo);
        if !(x > lo + margin && x < hi - margin) || (x - mid).abs() < 1e-16 * mid.abs() {
            x = if mid - lo > hi - mid { mid - 0.381_966 * (mid - lo) } else { mid + 0.381_966 * (hi - mid) };
        }
        let fx = f(x);
        if fx < fmid {
            if x < mid {
                (hi, fhi) = (mid, fmid);
            } else {
                (lo, flo) = (mid, fmid);
            }
            (mid, fmid) = (x, fx);
        } else if x < mid {
            (lo, flo) = (x, fx);
        } else {
            (hi, fhi) = (x, fx);
        }
    }
    mid
}

fn excited_population(device: &DeviceModel, qubit: usize, shape: &PulseShape) -> Result<f64> {
    let s = Schedule::new().then(Instruction::play(*shape, ChannelId::drive(qubit)))?;
    let compiled = CompiledSchedule::new(&s, device, 1)?;
    let mut state = QuantumState::zero(device.n_qubits());
    compiled.evolve(&mut state, None)?;
    Ok(state.excited_population(qubit))
}

/// Sweeps the amplitude of `family` on `qubit`, fits the Rabi curve and
/// returns the π pulse. Also calibrates the matching π/2 pulse and stores
/// both in `device.calibrations`.
pub fn rabi_calibrate(device: &mut DeviceModel, qubit: usize, family: &PulseShape, sweep: &[f64]) -> Result<PulseShape> {
    device.check_channel(ChannelId::drive(qubit))?;
    if sweep.is_empty() || sweep.iter().any(|a| !(0.0..=1.0).contains(a)) {
        return Err(Error::Parameter("sweep amplitudes must be non-empty and within [0, 1]".into()));
    }
    let p1 = sweep
        .iter()
        .map(|&a| excited_population(device, qubit, &family.with_amp(a)))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_rabi(sweep, &p1)?;
    let amp = fit.pi_amp();
    if amp > 1.0 {
        return Err(Error::Calibration(format!("π amplitude {amp:.4} exceeds 1 for qubit {qubit}")));
    }
    let x = family.with_amp(amp);
    let sx = calibrate_sx(device, qubit, &x)?;
    device.calibrations.insert(qubit, QubitCalibration { x, sx });
    Ok(x)
}

/// Bisects the amplitude in `[0, x.amp]` for which the pulse leaves the qubit
/// with P(|1⟩) = 1/2.
pub fn calibrate_sx(device: &DeviceModel, qubit: usize, x: &PulseShape) -> Result<PulseShape> {
    let (mut lo, mut hi) = (0.0, x.amp);
    if excited_population(device, qubit, x)? < 0.5 {
        return Err(Error::Calibration("π pulse does not pass half population".into()));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if excited_population(device, qubit, &x.with_amp(mid))? < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(x.with_amp(0.5 * (lo + hi)))
}
