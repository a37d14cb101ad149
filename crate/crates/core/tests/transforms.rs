mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use revpulse::device::DeviceModel;
use revpulse::pulse_ir::{wrap_angle, ChannelId, Instruction, Schedule};
use revpulse::simulator::linalg::{mat2_to_dense, phase_distance, rx};
use revpulse::simulator::{evolve, propagator, QuantumState};
use revpulse::transforms::{build_hea_ansatz, build_rx, fold_schedule, reverse_schedule, AnsatzSpec};
use revpulse::vqe::basis_rotation;

fn calibrated_single() -> DeviceModel {
    let mut d = DeviceModel::single_qubit();
    d.calibrate_all().unwrap();
    d
}

/// Entries with angles and phases wrapped, for comparison modulo 2π.
fn normalized(s: &Schedule) -> Vec<(u64, Instruction)> {
    s.entries()
        .iter()
        .map(|&(t, inst)| match inst {
            Instruction::Play { mut shape, channel } => {
                shape.angle = wrap_angle(shape.angle);
                (t, Instruction::Play { shape, channel })
            }
            Instruction::ShiftPhase { phase, channel } => (t, Instruction::ShiftPhase { phase: wrap_angle(phase), channel }),
            other => (t, other),
        })
        .collect()
}

fn by_channel(s: &Schedule) -> Vec<(u64, Instruction)> {
    let mut v = normalized(s);
    v.sort_by_key(|(t, inst)| (inst.channel(), *t));
    v
}

#[test]
fn single_shift_phase_is_negated() {
    let s = Schedule::new().then(Instruction::shift_phase(0.7, ChannelId::drive(0))).unwrap();
    let r = reverse_schedule(&s).unwrap();
    assert_eq!(r.entries(), &[(0, Instruction::shift_phase(-0.7, ChannelId::drive(0)))]);
}

#[test]
fn reversed_program_undoes_each_pulse() {
    let device = DeviceModel::two_qubit();
    let s = common::random_schedule(&device, 20, 3);
    let r = reverse_schedule(&s).unwrap();
    assert_eq!(r.duration(), s.duration());
    assert_eq!(r.plays().count(), s.plays().count());
    for ch in s.channels() {
        assert!((r.total_phase(ch) + s.total_phase(ch)).abs() < 1e-12);
    }
}

#[test]
fn rx_matches_rotation_matrix() {
    let device = calibrated_single();
    for theta in [0.0, 0.3, FRAC_PI_2, PI, -2.2, 3.0] {
        let u = propagator(&build_rx(&device, 0, theta).unwrap(), &device, 1).unwrap();
        let d = phase_distance(&u, &mat2_to_dense(&rx(theta)));
        assert!(d < 1e-6, "θ={theta}: distance {d}");
    }
}

#[test]
fn rx_on_second_qubit_leaves_first_alone() {
    let device = DeviceModel::two_qubit_calibrated();
    let s = evolve(&build_rx(&device, 1, PI).unwrap(), &device, &QuantumState::zero(2), 1).unwrap();
    assert!((s.probabilities()[1] - 1.0).abs() < 1e-9);
}

#[test]
fn basis_rotations_map_eigenbases_to_z() {
    let device = DeviceModel::two_qubit_calibrated();
    // A generic entangled state from a few random pulses.
    let prep = common::random_schedule(&DeviceModel::two_qubit(), 6, 11);
    let psi = evolve(&prep, &device, &QuantumState::zero(2), 1).unwrap();
    for (pauli, measured) in [("XI", "ZI"), ("IY", "IZ"), ("XY", "ZZ"), ("YX", "ZZ"), ("ZX", "ZZ")] {
        let rotated = evolve(&basis_rotation(&device, pauli).unwrap(), &device, &psi, 1).unwrap();
        let before = psi.expectation(pauli).unwrap();
        let after = rotated.expectation(measured).unwrap();
        assert!((before - after).abs() < 1e-8, "{pauli}: {before} vs {after}");
    }
    assert!(basis_rotation(&device, "XQ").is_err());
}

#[test]
fn fold_scales_duration_and_checks_scale() {
    let device = DeviceModel::two_qubit();
    let s = common::random_schedule(&device, 8, 5);
    assert_eq!(fold_schedule(&s, 1).unwrap(), s);
    let f = fold_schedule(&s, 3).unwrap();
    assert_eq!(f.duration(), 3 * s.duration());
    assert_eq!(f.plays().count(), 3 * s.plays().count());
    assert!(fold_schedule(&s, 2).is_err());
    assert!(fold_schedule(&s, 0).is_err());
}

#[test]
fn ansatz_layout() {
    let device = DeviceModel::two_qubit();
    let spec = AnsatzSpec::for_device(&device, 1);
    let s = build_hea_ansatz(&device, &spec, &[0.2, 0.1, -0.3, 0.4, 0.5, 0.0]).unwrap();
    let plays: Vec<_> = s.plays().collect();
    assert_eq!(plays.len(), 3);
    assert_eq!((plays[0].0, plays[0].2), (0, ChannelId::drive(0)));
    assert_eq!((plays[1].0, plays[1].2), (0, ChannelId::drive(1)));
    assert_eq!((plays[2].0, plays[2].2), (160, ChannelId::control(0)));
    assert_eq!(plays[1].1.amp, 0.3);
    assert!((plays[1].1.angle - (0.4 + PI)).abs() < 1e-15);
    let zero = build_hea_ansatz(&device, &AnsatzSpec::for_device(&device, 2), &[0.0; 12]).unwrap();
    let u = propagator(&zero, &device, 1).unwrap();
    assert!(phase_distance(&u, &DMatrix::<Complex64>::identity(4, 4)) < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schedule_then_reverse_is_identity(seed in any::<u64>()) {
        let (device, s) = common::random_case(seed);
        let u = propagator(&s.append(&reverse_schedule(&s).unwrap()), &device, 1).unwrap();
        prop_assert!(phase_distance(&u, &DMatrix::identity(u.nrows(), u.nrows())) < 1e-6);
    }

    #[test]
    fn single_qubit_reverse_inverts_propagator(seed in any::<u64>(), pulses in 1usize..20) {
        let device = DeviceModel::single_qubit();
        let s = common::random_schedule(&device, pulses, seed);
        let u = propagator(&s, &device, 1).unwrap();
        let v = propagator(&reverse_schedule(&s).unwrap(), &device, 1).unwrap();
        prop_assert!(phase_distance(&(v * u), &DMatrix::identity(2, 2)) < 1e-6);
    }

    #[test]
    fn reversal_is_an_involution(seed in any::<u64>()) {
        let (_, s) = common::random_case(seed);
        let twice = reverse_schedule(&reverse_schedule(&s).unwrap()).unwrap();
        prop_assert_eq!(twice.duration(), s.duration());
        // Same-time entries on different channels may come back in another order.
        let (a, b) = (by_channel(&twice), by_channel(&s));
        prop_assert_eq!(a.len(), b.len());
        for ((ta, ia), (tb, ib)) in a.iter().zip(&b) {
            prop_assert_eq!(ta, tb);
            match (ia, ib) {
                (Instruction::Play { shape: x, .. }, Instruction::Play { shape: y, .. }) => {
                    prop_assert!((wrap_angle(x.angle - y.angle)).abs() < 1e-12);
                    prop_assert_eq!(x.with_angle(0.0), y.with_angle(0.0));
                }
                (Instruction::ShiftPhase { phase: x, .. }, Instruction::ShiftPhase { phase: y, .. }) => {
                    prop_assert!((wrap_angle(x - y)).abs() < 1e-12);
                }
                _ => prop_assert_eq!(ia, ib),
            }
        }
    }

    #[test]
    fn folding_preserves_the_propagator(seed in any::<u64>()) {
        let (device, s) = common::random_case(seed);
        let u = propagator(&s, &device, 1).unwrap();
        let f = propagator(&fold_schedule(&s, 3).unwrap(), &device, 1).unwrap();
        prop_assert!(phase_distance(&u, &f) < 1e-6);
    }
}
