use rand::Rng;
use serde::Serialize;

use super::{energy_expectation, PauliHamiltonian};
use crate::device::DeviceModel;
use crate::noise::NoiseConfig;
use crate::optim::{nelder_mead, NelderMeadSettings};
use crate::rng::stream;
use crate::simulator::SimOptions;
use crate::transforms::AnsatzSpec;
use crate::Result;

#[derive(Clone, Debug)]
pub struct VqeConfig {
    pub ansatz: AnsatzSpec,
    pub options: SimOptions,
    pub optimizer: NelderMeadSettings,
    pub zne: bool,
    pub noise: Option<NoiseConfig>,
    /// Seeds the starting parameters.
    pub seed: u64,
}

impl VqeConfig {
    pub fn new(ansatz: AnsatzSpec) -> Self {
        Self {
            ansatz,
            options: SimOptions::statevector(),
            optimizer: NelderMeadSettings { max_iters: 500, initial_step: 0.2, f_tol: 1e-9, x_tol: 1e-6 },
            zne: false,
            noise: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VqeResult {
    pub best_params: Vec<f64>,
    pub best_energy: f64,
    /// `(iteration, best energy so far)` after every optimizer iteration.
    pub trace: Vec<(usize, f64)>,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Starting point: amplitudes uniform in `[0, 0.3]`, angles uniform in
/// `[0, 2π)`, drawn from `seed`.
pub fn initial_params(spec: &AnsatzSpec, seed: u64) -> Vec<f64> {
    let mut rng = stream(seed);
    (0..spec.n_params() / 2)
        .flat_map(|_| [rng.random_range(0.0..0.3), rng.random_range(0.0..std::f64::consts::TAU)])
        .collect()
}

/// Minimizes the ansatz energy with Nelder–Mead.
pub fn optimize(h: &PauliHamiltonian, device: &DeviceModel, config: &VqeConfig) -> Result<VqeResult> {
    let x0 = initial_params(&config.ansatz, config.seed);
    let objective = |x: &[f64]| {
        energy_expectation(h, &config.ansatz, x, device, config.noise.as_ref(), &config.options, config.zne)
    };
    let m = nelder_mead(objective, &x0, &config.optimizer)?;
    Ok(VqeResult {
        best_params: m.x,
        best_energy: m.fx,
        trace: m.trace.into_iter().enumerate().map(|(i, e)| (i + 1, e)).collect(),
        iterations: m.iterations,
        evaluations: m.evaluations,
    })
}
