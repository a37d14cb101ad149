//! Finds the amplitude noise that gives Square pulses a target per-pulse
//! infidelity, then reuses it for the other families.
//!
//! cargo run --release --example noise_tuning

use revpulse::analysis::{rb_run, PulseFamily};
use revpulse::device::DeviceModel;
use revpulse::noise::{tune_noise, TuneSettings};
use revpulse::simulator::SimOptions;

fn main() -> revpulse::Result<()> {
    let device = DeviceModel::two_qubit_calibrated();
    let options = SimOptions::statevector();
    let sizes: Vec<usize> = (1..=10).collect();
    let settings = TuneSettings::new(sizes.clone(), 10, options);

    let target = 0.01;
    let tuned = tune_noise(target, &PulseFamily::square(), &device, &settings)?;
    println!(
        "square: σ_amp = {:.5} gives slope {:.5} (target {target}, {} evaluations)",
        tuned.config.amp_sigma_rel, tuned.curve.slope, tuned.evaluations
    );

    for family in [PulseFamily::gaussian(), PulseFamily::drag(), PulseFamily::rx()] {
        let curve = rb_run(&device, &family, &sizes, 10, Some(&tuned.config), &options)?;
        println!("{:>8}: slope {:.5}", family.name(), curve.slope);
    }
    Ok(())
}
