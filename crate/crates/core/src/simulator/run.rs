//! Noisy execution of a schedule from |0…0⟩.

use super::engine::CompiledSchedule;
use super::measure::{apply_readout_flips, counts_to_distribution, flip_bits, sample_counts, sample_index, to_counts};
use super::{Counts, QuantumState, SimMode, SimOptions};
use crate::device::DeviceModel;
use crate::noise::{draw_scales, NoiseConfig, Resample};
use crate::pulse_ir::Schedule;
use crate::rng::stream;
use crate::Result;

/// Outcome distribution over basis indices.
///
/// In statevector mode the result is exact given the amplitude draws: one draw
/// for `per_circuit`, an average over `options.shots` trajectories for
/// `per_shot`; readout flips are applied analytically. In shots mode it is the
/// empirical distribution of [`run_counts`].
pub fn run_distribution(
    schedule: &Schedule,
    device: &DeviceModel,
    options: &SimOptions,
    noise: Option<&NoiseConfig>,
) -> Result<Vec<f64>> {
    let compiled = CompiledSchedule::new(schedule, device, options.substeps_per_dt)?;
    let n = compiled.n_qubits();
    match options.mode {
        SimMode::Statevector => {
            let p_read = match noise {
                Some(cfg) => {
                    cfg.validate()?;
                    cfg.p_read
                }
                None => 0.0,
            };
            let probs = match noise.filter(|c| c.amp_sigma_rel > 0.0) {
                None => exact_probs(&compiled, None)?,
                Some(cfg) => {
                    let mut rng = stream(cfg.seed);
                    let trajectories = match cfg.resample {
                        Resample::PerCircuit => 1,
                        Resample::PerShot => options.shots.max(1),
                    };
                    let mut acc = vec![0.0; 1 << n];
                    for _ in 0..trajectories {
                        let scales = draw_scales(compiled.play_amps(), cfg.amp_sigma_rel, &mut rng);
                        for (a, p) in acc.iter_mut().zip(exact_probs(&compiled, Some(&scales))?) {
                            *a += p;
                        }
                    }
                    acc.iter().map(|a| a / trajectories as f64).collect()
                }
            };
            Ok(apply_readout_flips(&probs, n, p_read))
        }
        SimMode::Shots => counts_to_distribution(&counts_compiled(&compiled, options, noise)?, n),
    }
}

/// Sampled measurement counts. In shots mode with `per_shot` resampling every
/// shot gets its own amplitude draw; otherwise one draw serves all shots.
pub fn run_counts(
    schedule: &Schedule,
    device: &DeviceModel,
    options: &SimOptions,
    noise: Option<&NoiseConfig>,
) -> Result<Counts> {
    let compiled = CompiledSchedule::new(schedule, device, options.substeps_per_dt)?;
    match options.mode {
        SimMode::Shots => counts_compiled(&compiled, options, noise),
        SimMode::Statevector => {
            let probs = run_distribution(schedule, device, options, noise)?;
            Ok(sample_counts(&probs, compiled.n_qubits(), options.shots, 0.0, &mut stream(options.seed)))
        }
    }
}

fn counts_compiled(compiled: &CompiledSchedule, options: &SimOptions, noise: Option<&NoiseConfig>) -> Result<Counts> {
    if let Some(cfg) = noise {
        cfg.validate()?;
    }
    let n = compiled.n_qubits();
    let p_read = noise.map_or(0.0, |c| c.p_read);
    let mut shot_rng = stream(options.seed);
    match noise.filter(|c| c.amp_sigma_rel > 0.0) {
        Some(cfg) if cfg.resample == Resample::PerShot => {
            let mut noise_rng = stream(cfg.seed);
            let mut tallies = vec![0u64; 1 << n];
            for _ in 0..options.shots {
                let scales = draw_scales(compiled.play_amps(), cfg.amp_sigma_rel, &mut noise_rng);
                let probs = exact_probs(compiled, Some(&scales))?;
                let cumulative: Vec<f64> = probs
                    .iter()
                    .scan(0.0, |acc, p| {
                        *acc += p;
                        Some(*acc)
                    })
                    .collect();
                let outcome = sample_index(&cumulative, &mut shot_rng);
                tallies[flip_bits(outcome, n, p_read, &mut shot_rng)] += 1;
            }
            Ok(to_counts(&tallies, n))
        }
        amp_noise => {
            let scales = amp_noise.map(|cfg| draw_scales(compiled.play_amps(), cfg.amp_sigma_rel, &mut stream(cfg.seed)));
            let probs = exact_probs(compiled, scales.as_deref())?;
            Ok(sample_counts(&probs, n, options.shots, p_read, &mut shot_rng))
        }
    }
}

fn exact_probs(compiled: &CompiledSchedule, scales: Option<&[f64]>) -> Result<Vec<f64>> {
    let mut state = QuantumState::zero(compiled.n_qubits());
    compiled.evolve(&mut state, scales)?;
    Ok(state.probabilities())
}
