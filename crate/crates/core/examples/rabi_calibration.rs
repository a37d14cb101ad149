//! Rabi sweep and π / π/2 calibration of a Gaussian pulse on qubit 0.
//!
//! cargo run --release --example rabi_calibration

use std::f64::consts::PI;

use revpulse::device::{default_sweep, rabi_calibrate, DeviceModel};
use revpulse::pulse_ir::PulseShape;
use revpulse::simulator::linalg::{mat2_to_dense, phase_distance, rx};
use revpulse::simulator::propagator;
use revpulse::transforms::build_rx;

fn main() -> revpulse::Result<()> {
    let mut device = DeviceModel::two_qubit();
    let family = PulseShape::gaussian(160, 1.0, 0.0, 40.0);
    let x = rabi_calibrate(&mut device, 0, &family, &default_sweep())?;
    let sx = device.calibration(0)?.sx;
    println!("π amplitude   {:.6}", x.amp);
    println!("π/2 amplitude {:.6}", sx.amp);

    let mut single = DeviceModel::single_qubit();
    single.calibrate_all()?;
    println!("\n{:>8} {:>14}", "θ", "|U − Rx(θ)|");
    for theta in [0.1, PI / 4.0, PI / 2.0, PI, -2.0] {
        let u = propagator(&build_rx(&single, 0, theta)?, &single, 1)?;
        println!("{theta:>8.4} {:>14.3e}", phase_distance(&u, &mat2_to_dense(&rx(theta))));
    }
    Ok(())
}
