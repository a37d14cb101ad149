mod common;

use proptest::prelude::*;
use revpulse::analysis::{cr_tomography, estimate_fidelity, pst, rb_run, zne_extrapolate, PulseFamily, ZneModel};
use revpulse::device::DeviceModel;
use revpulse::noise::{NoiseConfig, Resample};
use revpulse::pulse_ir::Schedule;
use revpulse::simulator::{Counts, SimOptions};
use revpulse::Error;

#[test]
fn pst_is_the_initial_bitstring_fraction() {
    let counts = Counts::from([("00".to_string(), 700), ("01".to_string(), 300)]);
    assert_eq!(pst(&counts, "00"), 0.7);
    assert_eq!(pst(&counts, "11"), 0.0);
}

#[test]
fn noiseless_fidelity_is_one() {
    let opts = SimOptions::statevector();
    assert_eq!(estimate_fidelity(&Schedule::new(), &DeviceModel::two_qubit(), None, &opts).unwrap(), 1.0);
    for seed in 0..10 {
        let (device, s) = common::random_case(seed);
        assert!(estimate_fidelity(&s, &device, None, &opts).unwrap() >= 0.99999);
        // Sampled: every shot returns the initial bitstring.
        assert!(estimate_fidelity(&s, &device, None, &SimOptions::shots(200, seed)).unwrap() >= 0.99);
    }
}

#[test]
fn noisy_fidelity_is_deterministic_per_seed() {
    let (device, s) = common::random_case(7);
    let cfg = NoiseConfig::new(0.05, 0.01).with_seed(8);
    let opts = SimOptions::shots(256, 1);
    let a = estimate_fidelity(&s, &device, Some(&cfg), &opts).unwrap();
    assert_eq!(a, estimate_fidelity(&s, &device, Some(&cfg), &opts).unwrap());
    assert!(a < 1.0);
}

#[test]
fn zne_examples() {
    let v = zne_extrapolate(&[(1.0, -1.8518), (3.0, -1.8464)], ZneModel::Linear).unwrap();
    assert!((v + 1.8545).abs() < 1e-12);
    assert_eq!(zne_extrapolate(&[(1.0, 0.3), (3.0, 0.3)], ZneModel::Linear).unwrap(), 0.3);
    assert!((zne_extrapolate(&[(1.0, 1.1), (3.0, 1.3)], ZneModel::Linear).unwrap() - 1.0).abs() < 1e-12);
    assert!(zne_extrapolate(&[(1.0, 0.1), (1.0, 0.2)], ZneModel::Linear).is_err());
    assert!(zne_extrapolate(&[(1.0, 0.1)], ZneModel::Linear).is_err());
}

#[test]
fn rb_curve_csv_and_noiseless_flatness() {
    let device = DeviceModel::two_qubit_calibrated();
    let curve = rb_run(&device, &PulseFamily::rx(), &[2, 4, 6], 3, None, &SimOptions::statevector()).unwrap();
    assert!(curve.points.iter().all(|p| p.mean_infidelity <= 1e-5));
    let csv = curve.to_csv();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("n_pulses,mean_infidelity,std,repetitions\n2,"));
}

#[test]
fn rb_infidelity_grows_with_sequence_length() {
    let device = DeviceModel::single_qubit();
    let cfg = NoiseConfig::new(0.03, 0.0).with_resample(Resample::PerCircuit).with_seed(2);
    let curve = rb_run(&device, &PulseFamily::gaussian(), &[5, 10, 20, 40], 10, Some(&cfg), &SimOptions::statevector()).unwrap();
    assert!(curve.slope > 0.0);
    assert!(curve.is_monotone_within_std());
    assert!(curve.points.last().unwrap().mean_infidelity > curve.points[0].mean_infidelity);
}

fn tomography_durations() -> Vec<u32> {
    (0..=30).map(|k| 16 * k).collect()
}

#[test]
fn tomography_without_coupling_has_no_conditional_term() {
    let mut device = DeviceModel::two_qubit();
    device.couplings[0].j = 0.0;
    let r = cr_tomography(&device, 0, 0.5, &tomography_durations(), &SimOptions::statevector()).unwrap();
    assert!(r.a.iter().all(|a| a.abs() < 1e-6 * r.b[0]), "{:?}", r.a);
    let omega = device.couplings[0].cr_drive_strength * 0.5;
    assert!((r.b[0] - omega / 2.0).abs() < 1e-6 * omega);
}

#[test]
fn tomography_recovers_conditional_rates_and_phase() {
    let device = DeviceModel::two_qubit();
    let cp = device.couplings[0];
    let r = cr_tomography(&device, 0, 0.4, &tomography_durations(), &SimOptions::statevector()).unwrap();
    let omega = cp.cr_drive_strength * 0.4;
    let k = cp.j / (2.0 * cp.delta12);
    assert!((r.b[0] - omega / 2.0).abs() < 1e-6 * omega);
    assert!((r.a[0] + omega / 2.0 * k).abs() < 1e-6 * omega);
    assert_eq!(r.samples.len(), 2 * tomography_durations().len());
    assert!(r.to_csv().starts_with("duration,prep,exp_x,exp_y,exp_z\n0,0,"));
}

#[test]
fn tomography_rejects_thin_sweeps() {
    let device = DeviceModel::two_qubit();
    let opts = SimOptions::statevector();
    assert!(matches!(cr_tomography(&device, 0, 0.5, &[0, 10, 20], &opts), Err(Error::Parameter(_))));
    // Eight points covering well under one period.
    let short: Vec<u32> = (0..8).collect();
    assert!(matches!(cr_tomography(&device, 0, 0.5, &short, &opts), Err(Error::Fit(_))));
    assert!(cr_tomography(&device, 3, 0.5, &tomography_durations(), &opts).is_err());
}

proptest! {
    #[test]
    fn zne_is_affine_equivariant(
        e1 in -5.0..5.0f64, e3 in -5.0..5.0f64, shift in -3.0..3.0f64, scale in 0.1..10.0f64,
    ) {
        let base = zne_extrapolate(&[(1.0, e1), (3.0, e3)], ZneModel::Linear).unwrap();
        prop_assert!((base - (3.0 * e1 - e3) / 2.0).abs() < 1e-12);
        let shifted = zne_extrapolate(&[(1.0, e1 + shift), (3.0, e3 + shift)], ZneModel::Linear).unwrap();
        prop_assert!((shifted - (base + shift)).abs() < 1e-10);
        let scaled = zne_extrapolate(&[(1.0, e1 * scale), (3.0, e3 * scale)], ZneModel::Linear).unwrap();
        prop_assert!((scaled - base * scale).abs() < 1e-9);
    }

    #[test]
    fn zne_least_squares_recovers_lines(a in -2.0..2.0f64, b in -1.0..1.0f64) {
        let pts: Vec<(f64, f64)> = [1.0, 3.0, 5.0].iter().map(|&s| (s, a + b * s)).collect();
        prop_assert!((zne_extrapolate(&pts, ZneModel::Linear).unwrap() - a).abs() < 1e-12);
    }
}
