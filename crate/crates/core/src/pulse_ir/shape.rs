//! Parameterized pulse envelopes.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Shape-specific envelope parameters. `sigma` and `width` are in units of dt,
/// `beta` is dimensionless (in dt units of the derivative).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    Square,
    Gaussian { sigma: f64 },
    Drag { sigma: f64, beta: f64 },
    GaussianSquare { sigma: f64, width: f64 },
}

impl Envelope {
    pub fn name(&self) -> &'static str {
        match self {
            Envelope::Square => "square",
            Envelope::Gaussian { .. } => "gaussian",
            Envelope::Drag { .. } => "drag",
            Envelope::GaussianSquare { .. } => "gaussian_square",
        }
    }

    pub fn sigma(&self) -> Option<f64> {
        match *self {
            Envelope::Square => None,
            Envelope::Gaussian { sigma }
            | Envelope::Drag { sigma, .. }
            | Envelope::GaussianSquare { sigma, .. } => Some(sigma),
        }
    }
}

/// A parameterized pulse: envelope family, duration in samples, amplitude in
/// `[0, 1]` and a carrier angle in radians.
///
/// The angle is kept apart from the amplitude because reversal acts on the
/// angle alone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseShape {
    #[serde(flatten)]
    pub envelope: Envelope,
    pub duration: u32,
    pub amp: f64,
    pub angle: f64,
}

impl PulseShape {
    pub fn square(duration: u32, amp: f64, angle: f64) -> Self {
        Self { envelope: Envelope::Square, duration, amp, angle }
    }

    pub fn gaussian(duration: u32, amp: f64, angle: f64, sigma: f64) -> Self {
        Self { envelope: Envelope::Gaussian { sigma }, duration, amp, angle }
    }

    pub fn drag(duration: u32, amp: f64, angle: f64, sigma: f64, beta: f64) -> Self {
        Self { envelope: Envelope::Drag { sigma, beta }, duration, amp, angle }
    }

    pub fn gaussian_square(duration: u32, amp: f64, angle: f64, sigma: f64, width: f64) -> Self {
        Self { envelope: Envelope::GaussianSquare { sigma, width }, duration, amp, angle }
    }

    pub fn with_amp(mut self, amp: f64) -> Self {
        self.amp = amp;
        self
    }

    pub fn with_angle(mut self, angle: f64) -> Self {
        self.angle = angle;
        self
    }

    /// Checks the parameter domain.
    pub fn validate(&self) -> Result<()> {
        if self.duration == 0 {
            return Err(Error::Parameter("pulse duration must be at least 1 dt".into()));
        }
        if !(0.0..=1.0).contains(&self.amp) {
            return Err(Error::Parameter(format!("amp {} outside [0, 1]", self.amp)));
        }
        if !self.angle.is_finite() {
            return Err(Error::Parameter("angle must be finite".into()));
        }
        if let Some(sigma) = self.envelope.sigma() {
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(Error::Parameter(format!("sigma must be positive, got {sigma}")));
            }
        }
        match self.envelope {
            Envelope::Drag { beta, .. } if !beta.is_finite() => {
                Err(Error::Parameter("beta must be finite".into()))
            }
            Envelope::GaussianSquare { width, .. }
                if !(width >= 0.0 && width <= f64::from(self.duration)) =>
            {
                Err(Error::Parameter(format!(
                    "width {width} outside [0, duration={}]",
                    self.duration
                )))
            }
            _ => Ok(()),
        }
    }

    /// Complex envelope sampled at `t = 0..duration`.
    pub fn envelope_samples(&self) -> Result<Vec<Complex64>> {
        self.validate()?;
        let phase = Complex64::from_polar(self.amp, self.angle);
        let samples: Vec<Complex64> = self.unit_samples().into_iter().map(|s| s * phase).collect();
        if let Envelope::Drag { sigma, beta } = self.envelope {
            let bound = self.amp * (1.0 + beta.abs() / sigma) * (1.0 + 1e-12);
            if samples.iter().any(|s| s.norm() > bound) {
                return Err(Error::Parameter(format!(
                    "DRAG envelope exceeds amp·(1+|beta|/sigma); sigma={sigma} is too wide for duration {}",
                    self.duration
                )));
            }
        }
        Ok(samples)
    }

    /// Envelope with `amp = 1` and `angle = 0`. Parameters are assumed valid.
    pub(crate) fn unit_samples(&self) -> Vec<Complex64> {
        let n = self.duration as usize;
        match self.envelope {
            Envelope::Square => vec![Complex64::new(1.0, 0.0); n],
            Envelope::Gaussian { sigma } => lifted_gaussian(n, sigma, 0.0)
                .into_iter()
                .map(|(g, _)| Complex64::new(g, 0.0))
                .collect(),
            Envelope::Drag { sigma, beta } => lifted_gaussian(n, sigma, 0.0)
                .into_iter()
                .map(|(g, dg)| Complex64::new(g, beta * dg))
                .collect(),
            Envelope::GaussianSquare { sigma, width } => lifted_gaussian(n, sigma, width)
                .into_iter()
                .map(|(g, _)| Complex64::new(g, 0.0))
                .collect(),
        }
    }

    /// Sum of the unit envelope over its samples, in dt units.
    pub fn unit_area(&self) -> Complex64 {
        self.unit_samples().into_iter().sum()
    }
}

/// Gaussian (optionally with a flat top of `width`) centred on the middle of
/// the sample grid, lifted so the first and last samples are zero and rescaled
/// so the largest sample is one. Returns `(value, derivative)` pairs.
///
/// Centring on `(n - 1) / 2` makes the samples exactly mirror-symmetric.
fn lifted_gaussian(n: usize, sigma: f64, width: f64) -> Vec<(f64, f64)> {
    if n == 0 {
        return Vec::new();
    }
    let center = (n as f64 - 1.0) / 2.0;
    let half_flat = width / 2.0;
    let raw = |t: f64| -> (f64, f64) {
        let offset = t - center;
        let x = offset.abs() - half_flat;
        if x <= 0.0 {
            (1.0, 0.0)
        } else {
            let g = (-x * x / (2.0 * sigma * sigma)).exp();
            (g, -x * offset.signum() / (sigma * sigma) * g)
        }
    };
    let edge = raw(0.0).0;
    let peak = raw(center.floor()).0;
    let scale = peak - edge;
    if scale <= f64::EPSILON {
        // No Gaussian flank inside the grid: either the pulse is too short to
        // lift (n <= 2) or the flat top covers every sample.
        let flat = if half_flat > 0.0 { 1.0 } else { 0.0 };
        return vec![(flat, 0.0); n];
    }
    (0..n)
        .map(|t| {
            let (g, dg) = raw(t as f64);
            ((g - edge) / scale, dg / scale)
        })
        .collect()
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    a
}
