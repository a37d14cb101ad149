use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rand::Rng;

use crate::device::DeviceModel;
use crate::optim::{nelder_mead, NelderMeadSettings};
use crate::pulse_ir::{ChannelId, Instruction, PulseShape, Schedule};
use crate::rng::{derive_seed, stream};
use crate::simulator::{CompiledSchedule, QuantumState, SimMode, SimOptions};
use crate::{Error, Result};

/// Target-qubit Bloch vector after a flat cross-resonance pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TomographySample {
    pub duration: u32,
    /// Control qubit preparation, 0 or 1.
    pub prep: u8,
    pub exp: [f64; 3],
}

/// Coefficients of the target Hamiltonian `Σ_k (b_k·I + a_k·Z_c)·σ_k` in
/// rad/s, with `k` running over x, y, z.
#[derive(Clone, Debug, PartialEq)]
pub struct CrTomographyResult {
    pub a: [f64; 3],
    pub b: [f64; 3],
    /// RMS residual of the fitted ⟨X⟩, ⟨Y⟩, ⟨Z⟩ for control |0⟩ and |1⟩.
    pub residuals: [[f64; 3]; 2],
    pub samples: Vec<TomographySample>,
}

impl CrTomographyResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("duration,prep,exp_x,exp_y,exp_z\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{},{},{}", s.duration, s.prep, s.exp[0], s.exp[1], s.exp[2]);
        }
        out
    }
}

/// Bloch vector of |0⟩ after rotating by `angle` about the unit axis `n`.
fn precess(n: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let k = n[2] * (1.0 - c);
    [n[1] * s + n[0] * k, -n[0] * s + n[1] * k, c + n[2] * k]
}

fn axis(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Fits `data` (time in seconds, Bloch vector) to precession about a fixed
/// axis and returns the Hamiltonian vector ω (H = ω·σ, rotation rate 2|ω|)
/// together with per-axis RMS residuals. Fits with any residual above
/// `max_residual` are rejected.
fn fit_precession(data: &[(f64, [f64; 3])], max_residual: f64) -> Result<([f64; 3], [f64; 3])> {
    let sse = |rate: f64, theta: f64, phi: f64| -> f64 {
        let n = axis(theta, phi);
        data.iter()
            .map(|(t, e)| {
                let m = precess(n, rate * t);
                (0..3).map(|k| (m[k] - e[k]).powi(2)).sum::<f64>()
            })
            .sum()
    };
    let t_max = data.iter().map(|d| d.0).fold(0.0, f64::max);
    let dt_min = {
        let mut ts: Vec<f64> = data.iter().map(|d| d.0).collect();
        ts.sort_by(f64::total_cmp);
        ts.windows(2).map(|w| w[1] - w[0]).filter(|d| *d > 0.0).fold(f64::INFINITY, f64::min)
    };
    let rate_hi = PI / dt_min;
    let rate_lo = PI / t_max;
    let mut best = (f64::INFINITY, 0.0, 0.0, 0.0);
    const RATES: usize = 400;
    for i in 0..RATES {
        let rate = rate_lo * (rate_hi / rate_lo).powf(i as f64 / (RATES - 1) as f64);
        for it in 0..=12 {
            let theta = PI * f64::from(it) / 12.0;
            for ip in 0..24 {
                let phi = TAU * f64::from(ip) / 24.0;
                let e = sse(rate, theta, phi);
                if e < best.0 {
                    best = (e, rate, theta, phi);
                }
            }
        }
    }
    // Refine in (log rate, θ, φ) so all coordinates are order one.
    let settings = NelderMeadSettings { max_iters: 4000, initial_step: 0.05, f_tol: 1e-24, x_tol: 1e-13 };
    let start = [best.1.ln(), best.2, best.3];
    let m = nelder_mead(|x| Ok::<_, Error>(sse(x[0].exp(), x[1], x[2])), &start, &settings)?;
    let (rate, n) = (m.x[0].exp(), axis(m.x[1], m.x[2]));
    if rate * t_max < TAU {
        return Err(Error::Fit(format!(
            "durations cover {:.2} of a Rabi period; at least one full period is needed",
            rate * t_max / TAU
        )));
    }
    let mut residuals = [0.0; 3];
    for (t, e) in data {
        let model = precess(n, rate * t);
        for k in 0..3 {
            residuals[k] += (model[k] - e[k]).powi(2);
        }
    }
    let count = data.len() as f64;
    let residuals = residuals.map(|r| (r / count).sqrt());
    if residuals.iter().any(|&r| r > max_residual) {
        return Err(Error::Fit(format!("precession model does not fit (RMS residuals {residuals:?})")));
    }
    Ok((n.map(|c| c * rate / 2.0), residuals))
}

/// Cross-resonance Hamiltonian tomography on `coupling`: a flat pulse of
/// amplitude `cr_amp` is swept over `durations` with the control in |0⟩ and
/// |1⟩, the target Bloch vector is recorded, and each conditional precession
/// is fitted.
///
/// In statevector mode expectations are exact; in shots mode each is
/// estimated from `options.shots` ±1 outcomes.
pub fn cr_tomography(
    device: &DeviceModel,
    coupling: usize,
    cr_amp: f64,
    durations: &[u32],
    options: &SimOptions,
) -> Result<CrTomographyResult> {
    device.check_channel(ChannelId::control(coupling))?;
    if durations.len() < 8 {
        return Err(Error::Parameter("at least 8 durations are required".into()));
    }
    let cp = device.couplings[coupling];
    let n = device.n_qubits();
    let pauli = |k: char| -> String { (0..n).map(|q| if q == cp.target { k } else { 'I' }).collect() };
    let labels = [pauli('X'), pauli('Y'), pauli('Z')];
    let mut samples = Vec::new();
    let mut coefficients = [[0.0; 3]; 2];
    let mut residuals = [[0.0; 3]; 2];
    // Sampled expectations scatter by up to 1/√shots around the model.
    let max_residual = match options.mode {
        SimMode::Shots => 0.1 + 3.0 / (options.shots.max(1) as f64).sqrt(),
        _ => 0.1,
    };
    for prep in 0..2u8 {
        let mut data = Vec::new();
        for (i, &d) in durations.iter().enumerate() {
            let mut state = QuantumState::zero(n);
            if prep == 1 {
                state = QuantumState::basis(n, 1 << (n - 1 - cp.control));
            }
            if d > 0 {
                let s = Schedule::new()
                    .then(Instruction::play(PulseShape::square(d, cr_amp, 0.0), ChannelId::control(coupling)))?;
                CompiledSchedule::new(&s, device, options.substeps_per_dt)?.evolve(&mut state, None)?;
            }
            let mut exp = [0.0; 3];
            for k in 0..3 {
                exp[k] = state.expectation(&labels[k])?;
                if options.mode == SimMode::Shots {
                    let seed = derive_seed(options.seed, ((prep as u64) << 40) | ((i as u64) << 2) | k as u64);
                    let mut rng = stream(seed);
                    let p_plus = (1.0 + exp[k]) / 2.0;
                    let plus = (0..options.shots).filter(|_| rng.random::<f64>() < p_plus).count() as f64;
                    exp[k] = 2.0 * plus / options.shots as f64 - 1.0;
                }
            }
            samples.push(TomographySample { duration: d, prep, exp });
            data.push((f64::from(d) * device.dt, exp));
        }
        let (omega, res) = fit_precession(&data, max_residual)?;
        coefficients[prep as usize] = omega;
        residuals[prep as usize] = res;
    }
    let [w0, w1] = coefficients;
    Ok(CrTomographyResult {
        a: [0, 1, 2].map(|k| (w0[k] - w1[k]) / 2.0),
        b: [0, 1, 2].map(|k| (w0[k] + w1[k]) / 2.0),
        residuals,
        samples,
    })
}
