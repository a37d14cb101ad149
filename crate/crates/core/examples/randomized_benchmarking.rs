//! Pulse randomized benchmarking of every family under one fixed noise level.
//! Writes one CSV per family to the system temp dir.
//!
//! cargo run --release --example randomized_benchmarking

use revpulse::analysis::{rb_run, PulseFamily};
use revpulse::device::DeviceModel;
use revpulse::noise::NoiseConfig;
use revpulse::simulator::SimOptions;

fn main() -> revpulse::Result<()> {
    let device = DeviceModel::two_qubit_calibrated();
    let noise = NoiseConfig::new(0.02, 0.0).with_seed(3);
    let options = SimOptions { shots: 32, ..SimOptions::statevector() };
    let sizes = [10, 20, 40, 60];
    let dir = std::env::temp_dir();

    println!("{:>16} {:>12} {:>10}", "family", "slope", "monotone");
    for family in [PulseFamily::drag(), PulseFamily::gaussian(), PulseFamily::gaussian_square(), PulseFamily::square(), PulseFamily::rx()] {
        let curve = rb_run(&device, &family, &sizes, 5, Some(&noise), &options)?;
        println!("{:>16} {:>12.3e} {:>10}", family.name(), curve.slope, curve.is_monotone_within_std());
        let path = dir.join(format!("rb_{}.csv", family.name()));
        std::fs::write(&path, curve.to_csv())?;
    }
    println!("\nCSV files in {}", dir.display());
    Ok(())
}
