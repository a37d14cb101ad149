//! Amplitude and readout noise, and tuning of the amplitude noise level to a
//! target per-pulse infidelity.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::analysis::{rb_run, PulseFamily, RbCurve};
use crate::device::DeviceModel;
use crate::pulse_ir::Schedule;
use crate::simulator::SimOptions;
use crate::{Error, Result};

/// When amplitude perturbations are redrawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resample {
    PerShot,
    PerCircuit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    /// Relative standard deviation of the multiplicative amplitude error.
    pub amp_sigma_rel: f64,
    /// Per-bit readout flip probability.
    pub p_read: f64,
    pub resample: Resample,
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self { amp_sigma_rel: 0.0, p_read: 0.0, resample: Resample::PerShot, seed: 0 }
    }
}

impl NoiseConfig {
    pub fn new(amp_sigma_rel: f64, p_read: f64) -> Self {
        Self { amp_sigma_rel, p_read, ..Self::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_resample(mut self, resample: Resample) -> Self {
        self.resample = resample;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.amp_sigma_rel >= 0.0 && self.amp_sigma_rel.is_finite()) {
            return Err(Error::Parameter(format!("amp_sigma_rel must be ≥ 0, got {}", self.amp_sigma_rel)));
        }
        if !(0.0..=0.5).contains(&self.p_read) {
            return Err(Error::Parameter(format!("p_read {} outside [0, 0.5]", self.p_read)));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Perturbed amplitude `clamp(a·(1 + σ·z), 0, 1)` for a standard normal `z`.
fn perturb_amp(amp: f64, sigma: f64, rng: &mut impl Rng) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    (amp * (1.0 + sigma * z)).clamp(0.0, 1.0)
}

/// Replaces every Play amplitude (entry order) with a perturbed draw.
pub fn perturb_schedule(s: &Schedule, cfg: &NoiseConfig, rng: &mut impl Rng) -> Schedule {
    s.map_plays(|shape, _| shape.with_amp(perturb_amp(shape.amp, cfg.amp_sigma_rel, rng)))
}

/// Envelope scale factors equivalent to [`perturb_schedule`] with the same
/// random stream: `scales[i] · amps[i]` is the i-th perturbed amplitude.
pub fn draw_scales(amps: &[f64], sigma: f64, rng: &mut impl Rng) -> Vec<f64> {
    amps.iter()
        .map(|&a| {
            let perturbed = perturb_amp(a, sigma, rng);
            if a > 0.0 {
                perturbed / a
            } else {
                1.0
            }
        })
        .collect()
}

/// Result of [`tune_noise`]: the tuned configuration and the curve measured
/// at it.
#[derive(Clone, Debug)]
pub struct TunedNoise {
    pub config: NoiseConfig,
    pub curve: RbCurve,
    pub evaluations: usize,
}

/// Settings for [`tune_noise`].
#[derive(Clone, Debug)]
pub struct TuneSettings {
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub options: SimOptions,
    /// Template for the returned config; its `amp_sigma_rel` is ignored.
    pub base: NoiseConfig,
    /// Accepted relative error of the fitted slope.
    pub tolerance: f64,
    pub max_evaluations: usize,
}

impl TuneSettings {
    pub fn new(sizes: Vec<usize>, repetitions: usize, options: SimOptions) -> Self {
        Self {
            sizes,
            repetitions,
            options,
            base: NoiseConfig::default().with_resample(Resample::PerCircuit),
            tolerance: 0.05,
            max_evaluations: 40,
        }
    }
}

/// Bisects (in log σ) on `amp_sigma_rel` until the RB slope of `family` is
/// within `settings.tolerance` of `target`.
///
/// The RB sequences and amplitude draws are held fixed across evaluations
/// (same seeds), so the fitted slope is a smooth, increasing function of σ.
pub fn tune_noise(
    target: f64,
    family: &PulseFamily,
    device: &DeviceModel,
    settings: &TuneSettings,
) -> Result<TunedNoise> {
    if !(target > 0.0 && target < 0.1) {
        return Err(Error::Parameter(format!("target infidelity {target} outside (0, 0.1)")));
    }
    let evaluations = std::cell::Cell::new(0);
    let measure = |sigma: f64| -> Result<(NoiseConfig, RbCurve)> {
        evaluations.set(evaluations.get() + 1);
        let cfg = NoiseConfig { amp_sigma_rel: sigma, ..settings.base };
        let curve = rb_run(device, family, &settings.sizes, settings.repetitions, Some(&cfg), &settings.options)?;
        Ok((cfg, curve))
    };

    let (mut lo, mut hi) = (1e-5_f64, 0.5_f64);
    let (_, lo_curve) = measure(lo)?;
    let (hi_cfg, hi_curve) = measure(hi)?;
    if lo_curve.slope > target || hi_curve.slope < target {
        return Err(Error::Tuning(format!(
            "slope range [{:.3e}, {:.3e}] over σ ∈ [{lo}, {hi}] does not bracket target {target}",
            lo_curve.slope, hi_curve.slope
        )));
    }
    let mut best = (hi_cfg, hi_curve);
    while evaluations.get() < settings.max_evaluations {
        let mid = (lo * hi).sqrt();
        let (cfg, curve) = measure(mid)?;
        let rel = (curve.slope - target).abs() / target;
        let better = rel < (best.1.slope - target).abs() / target;
        let too_high = curve.slope > target;
        if better {
            best = (cfg, curve);
        }
        if rel <= settings.tolerance {
            break;
        }
        if too_high {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let rel = (best.1.slope - target).abs() / target;
    if rel > settings.tolerance {
        return Err(Error::Tuning(format!(
            "best slope {:.4e} is {:.1}% from target {target} after {evaluations} evaluations",
            best.1.slope,
            100.0 * rel,
            evaluations = evaluations.get()
        )));
    }
    Ok(TunedNoise { config: best.0, curve: best.1, evaluations: evaluations.get() })
}
