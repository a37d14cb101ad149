use std::f64::consts::TAU;
use std::fmt::Write as _;

use rand::Rng;

use super::estimate_fidelity;
use crate::device::DeviceModel;
use crate::noise::NoiseConfig;
use crate::pulse_ir::{ChannelId, Instruction, PulseShape, Schedule};
use crate::rng::{derive_seed, stream};
use crate::simulator::SimOptions;
use crate::transforms::RotationBuilder;
use crate::{Error, Result};

/// Duration of every random pulse in a benchmarking sequence.
pub const RB_PULSE_DURATION: u32 = 160;
/// Range of random pulse amplitudes.
pub const RB_AMP_RANGE: (f64, f64) = (0.1, 1.0);

/// What a benchmarking sequence is made of.
#[derive(Clone, Debug, PartialEq)]
pub enum PulseFamily {
    /// Pulses of a fixed envelope with random amplitude and angle.
    Pulses { template: PulseShape, qubit: usize },
    /// `Rx(θ)` gates with random θ, each two calibrated π/2 pulses.
    Rx { qubit: usize },
}

impl PulseFamily {
    /// DRAG pulses with σ = 18 dt (β = 0.5) on qubit 0.
    pub fn drag() -> Self {
        Self::pulses(PulseShape::drag(RB_PULSE_DURATION, 1.0, 0.0, 18.0, 0.5))
    }

    pub fn gaussian() -> Self {
        Self::pulses(PulseShape::gaussian(RB_PULSE_DURATION, 1.0, 0.0, 20.0))
    }

    pub fn gaussian_square() -> Self {
        Self::pulses(PulseShape::gaussian_square(RB_PULSE_DURATION, 1.0, 0.0, 10.0, 100.0))
    }

    pub fn square() -> Self {
        Self::pulses(PulseShape::square(RB_PULSE_DURATION, 1.0, 0.0))
    }

    pub fn rx() -> Self {
        Self::Rx { qubit: 0 }
    }

    pub fn pulses(template: PulseShape) -> Self {
        Self::Pulses { template, qubit: 0 }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "drag" => Ok(Self::drag()),
            "gaussian" => Ok(Self::gaussian()),
            "gaussian_square" => Ok(Self::gaussian_square()),
            "square" => Ok(Self::square()),
            "rx" => Ok(Self::rx()),
            other => Err(Error::Parameter(format!("unknown pulse family {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Pulses { template, .. } => template.envelope.name(),
            Self::Rx { .. } => "rx",
        }
    }

    pub fn qubit(&self) -> usize {
        match self {
            Self::Pulses { qubit, .. } | Self::Rx { qubit } => *qubit,
        }
    }
}

/// Draws a random sequence of `n` elements of `family`.
pub fn random_sequence(device: &DeviceModel, family: &PulseFamily, n: usize, rng: &mut impl Rng) -> Result<Schedule> {
    let ch = ChannelId::drive(family.qubit());
    match family {
        PulseFamily::Pulses { template, .. } => {
            let mut s = Schedule::new();
            for _ in 0..n {
                let amp = rng.random_range(RB_AMP_RANGE.0..=RB_AMP_RANGE.1);
                let angle = rng.random_range(0.0..TAU);
                s = s.then(Instruction::play(template.with_amp(amp).with_angle(angle), ch))?;
            }
            Ok(s)
        }
        PulseFamily::Rx { qubit } => {
            let builder = RotationBuilder::new(device, *qubit)?;
            let mut s = Schedule::new();
            for _ in 0..n {
                s = s.append(&builder.rx(rng.random_range(0.0..TAU))?);
            }
            Ok(s)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RbPoint {
    pub n_pulses: usize,
    pub mean_infidelity: f64,
    /// Sample standard deviation over repetitions.
    pub std: f64,
    pub repetitions: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RbCurve {
    pub family: String,
    pub points: Vec<RbPoint>,
    /// Per-pulse infidelity: slope of the least-squares line through the
    /// origin.
    pub slope: f64,
    /// Sum of squared residuals of that line.
    pub residual: f64,
}

impl RbCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n_pulses,mean_infidelity,std,repetitions\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{},{},{}", p.n_pulses, p.mean_infidelity, p.std, p.repetitions);
        }
        out
    }

    /// True if each mean is at least the previous one minus the pooled
    /// standard deviation of the two points.
    pub fn is_monotone_within_std(&self) -> bool {
        self.points.windows(2).all(|w| {
            let pooled = ((w[0].std.powi(2) + w[1].std.powi(2)) / 2.0).sqrt();
            w[1].mean_infidelity >= w[0].mean_infidelity - pooled
        })
    }
}

/// Slope and residual of the line through the origin fitted to `(n, y)`.
pub fn fit_through_origin(points: &[(f64, f64)]) -> (f64, f64) {
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let residual = points.iter().map(|p| (p.1 - slope * p.0).powi(2)).sum();
    (slope, residual)
}

/// Randomized benchmarking of `family`: for each size, `repetitions` random
/// sequences are run forward and reversed, and the infidelity `1 − PST` is
/// averaged.
///
/// Trial `k` (numbered across all sizes) draws its sequence from
/// `derive_seed(options.seed, k)`, its noise from `derive_seed(noise.seed, k)`
/// and its shots from a separate child of `options.seed`.
pub fn rb_run(
    device: &DeviceModel,
    family: &PulseFamily,
    sizes: &[usize],
    repetitions: usize,
    noise: Option<&NoiseConfig>,
    options: &SimOptions,
) -> Result<RbCurve> {
    if sizes.is_empty() {
        return Err(Error::Parameter("at least one sequence size is required".into()));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter("sequence sizes must be strictly increasing".into()));
    }
    if repetitions < 3 {
        return Err(Error::Parameter("at least 3 repetitions per size are required".into()));
    }
    let shot_base = derive_seed(options.seed, u64::MAX);
    let mut points = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let mut values = Vec::with_capacity(repetitions);
        for r in 0..repetitions {
            let trial = (i * repetitions + r) as u64;
            let seq = random_sequence(device, family, n, &mut stream(derive_seed(options.seed, trial)))?;
            let trial_noise = noise.map(|c| c.with_seed(derive_seed(c.seed, trial)));
            let trial_options = options.with_seed(derive_seed(shot_base, trial));
            values.push(1.0 - estimate_fidelity(&seq, device, trial_noise.as_ref(), &trial_options)?);
        }
        let mean = values.iter().sum::<f64>() / repetitions as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (repetitions - 1) as f64;
        points.push(RbPoint { n_pulses: n, mean_infidelity: mean, std: var.sqrt(), repetitions });
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.n_pulses as f64, p.mean_infidelity)).collect();
    let (slope, residual) = fit_through_origin(&xy);
    Ok(RbCurve { family: family.name().to_string(), points, slope, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_fit_exact_line() {
        let (slope, res) = fit_through_origin(&[(10.0, 0.004), (20.0, 0.008), (30.0, 0.012)]);
        assert!((slope - 0.0004).abs() < 1e-15);
        assert!(res < 1e-30);
    }

    #[test]
    fn noiseless_rb_is_flat() {
        let device = DeviceModel::single_qubit();
        let curve = rb_run(&device, &PulseFamily::drag(), &[1, 5, 10], 3, None, &SimOptions::statevector()).unwrap();
        assert!(curve.points.iter().all(|p| p.mean_infidelity <= 1e-5));
        assert!(curve.slope.abs() < 1e-6);
        assert!(curve.to_csv().starts_with("n_pulses,mean_infidelity,std,repetitions\n"));
    }

    #[test]
    fn argument_checks() {
        let device = DeviceModel::single_qubit();
        let opts = SimOptions::statevector();
        assert!(rb_run(&device, &PulseFamily::drag(), &[], 3, None, &opts).is_err());
        assert!(rb_run(&device, &PulseFamily::drag(), &[1], 2, None, &opts).is_err());
        assert!(matches!(
            rb_run(&device, &PulseFamily::rx(), &[1], 3, None, &opts),
            Err(Error::CalibrationMissing(0))
        ));
    }
}
