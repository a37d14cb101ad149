//! Pulse-level VQE for H2 on the two-qubit device, noiseless and then under
//! amplitude noise with and without zero-noise extrapolation.
//!
//! cargo run --release --example pulse_vqe [-- --quick]

use revpulse::device::DeviceModel;
use revpulse::noise::NoiseConfig;
use revpulse::simulator::SimOptions;
use revpulse::transforms::AnsatzSpec;
use revpulse::vqe::{optimize, PauliHamiltonian, VqeConfig};

fn main() -> revpulse::Result<()> {
    let quick = std::env::args().any(|a| a == "--quick");
    let device = DeviceModel::two_qubit_calibrated();
    let h = PauliHamiltonian::molecule("h2")?;
    let exact = h.exact_ground_energy()?;
    println!("exact ground energy {exact:.6}");

    let mut config = VqeConfig::new(AnsatzSpec::for_device(&device, 2));
    config.optimizer.max_iters = if quick { 100 } else { 500 };
    let noiseless = optimize(&h, &device, &config)?;
    println!(
        "noiseless: {:.6} (deviation {:.2e}, {} iterations)",
        noiseless.best_energy,
        (noiseless.best_energy - exact).abs(),
        noiseless.iterations
    );

    config.noise = Some(NoiseConfig::new(0.026, 0.0).with_seed(100));
    config.options = SimOptions { shots: if quick { 16 } else { 32 }, ..SimOptions::statevector() };
    for zne in [false, true] {
        config.zne = zne;
        let r = optimize(&h, &device, &config)?;
        println!(
            "noisy{}: {:.6} (deviation {:.2e})",
            if zne { " + ZNE" } else { "      " },
            r.best_energy,
            (r.best_energy - exact).abs()
        );
    }
    Ok(())
}
