//! Cross-resonance Hamiltonian tomography, exact and sampled, compared with
//! the rates implied by the device parameters.
//!
//! cargo run --release --example cr_tomography

use revpulse::analysis::cr_tomography;
use revpulse::device::DeviceModel;
use revpulse::simulator::SimOptions;

fn main() -> revpulse::Result<()> {
    let device = DeviceModel::two_qubit();
    let cp = device.couplings[0];
    let amp = 0.5;
    let durations: Vec<u32> = (0..=480).step_by(16).collect();

    let omega = cp.cr_drive_strength * amp;
    println!("expected IX = {:.4e} rad/s, ZX = {:.4e} rad/s\n", omega / 2.0, -omega / 2.0 * cp.zx_ratio());

    for (label, options) in [("exact", SimOptions::statevector()), ("1024 shots", SimOptions::shots(1024, 4))] {
        let r = cr_tomography(&device, 0, amp, &durations, &options)?;
        println!("{label}");
        for (k, axis) in ["X", "Y", "Z"].iter().enumerate() {
            println!("  I{axis} = {:>+12.4e}   Z{axis} = {:>+12.4e}", r.b[k], r.a[k]);
        }
    }
    Ok(())
}
