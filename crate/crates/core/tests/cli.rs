use std::path::Path;
use std::process::Command;

use revpulse::cli::run;
use revpulse::pulse_ir::{ChannelId, Instruction, Schedule};
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("revpulse").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sample_square() {
    let (code, out, _) = cli(&["sample", "--kind", "square", "--duration", "4", "--amp", "0.5"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(out.lines().next(), Some("t,re,im"));
    assert_eq!(rows, ["0,0.5,0.0", "1,0.5,0.0", "2,0.5,0.0", "3,0.5,0.0"]);
}

#[test]
fn sample_gaussian_peak() {
    let (code, out, _) = cli(&["sample", "--kind", "gaussian", "--duration", "160", "--sigma", "40", "--amp", "1"]);
    assert_eq!(code, 0);
    let row = out.lines().find(|l| l.starts_with("80,")).unwrap();
    let re: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(re, 1.0);
}

#[test]
fn bad_parameters_exit_two() {
    let (code, _, err) = cli(&["sample", "--kind", "drag", "--sigma", "0"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    assert_eq!(cli(&["sample", "--kind", "triangle"]).0, 2);
    assert_eq!(cli(&["rb", "--family", "sawtooth"]).0, 2);
    assert_eq!(cli(&["estimate", "/nonexistent/schedule.json"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn reverse_command() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.json");
    let s = Schedule::new().then(Instruction::shift_phase(0.7, ChannelId::drive(0))).unwrap();
    std::fs::write(&input, s.to_json().unwrap()).unwrap();
    let (code, out, _) = cli(&["reverse", path_str(&input)]);
    assert_eq!(code, 0);
    let r = Schedule::from_json(&out).unwrap();
    assert_eq!(r.entries(), &[(0, Instruction::shift_phase(-0.7, ChannelId::drive(0)))]);

    // Reversing twice returns the original.
    let once = dir.path().join("once.json");
    std::fs::write(&once, &out).unwrap();
    let (_, twice, _) = cli(&["reverse", path_str(&once)]);
    assert_eq!(Schedule::from_json(&twice).unwrap(), s);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"duration\": ").unwrap();
    assert_eq!(cli(&["reverse", path_str(&bad)]).0, 2);
}

#[test]
fn estimate_noiseless_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.json");
    let s = revpulse::transforms::build_rx(&revpulse::device::DeviceModel::two_qubit_calibrated(), 0, 1.1).unwrap();
    std::fs::write(&input, s.to_json().unwrap()).unwrap();
    let (code, out, _) = cli(&["estimate", path_str(&input), "--mode", "statevector"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["fidelity"].as_f64().unwrap() >= 0.99999);
}

#[test]
fn zne_demo() {
    let (code, out, _) = cli(&["zne-demo", "--e1", "-1.8518", "--e3", "-1.8464"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-1.8545");
}

#[test]
fn noiseless_rb() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) =
        cli(&["rb", "--family", "drag", "--sizes", "10,20,30", "--reps", "5", "--noise", "none", "--out", path_str(dir.path())]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    for l in &lines[1..] {
        let mean: f64 = l.split(',').nth(1).unwrap().parse().unwrap();
        assert!(mean <= 1e-5, "{l}");
    }
    assert_eq!(std::fs::read_to_string(dir.path().join("rb.csv")).unwrap(), out);
}

#[test]
fn manifest_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let noise = dir.path().join("noise.json");
    std::fs::write(&noise, r#"{"amp_sigma_rel": 0.01, "p_read": 0.0, "resample": "per_shot", "seed": 4}"#).unwrap();
    let out_dir = dir.path().join("run");
    let args = ["crtomo", "--seed", "3", "--shots", "256", "--noise", path_str(&noise), "--out", path_str(&out_dir)];
    assert_eq!(cli(&args).0, 0);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "crtomo");
    assert_eq!(m["device"], "builtin");
    assert_eq!(m["seed"], 3);
    assert_eq!(m["shots"], 256);
    assert_eq!(m["mode"], "shots");
    assert_eq!(m["noise"]["amp_sigma_rel"], 0.01);
    assert_eq!(m["version"], env!("CARGO_PKG_VERSION"));
    let outputs: Vec<&str> = m["outputs"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(outputs.len(), 2);
    for o in outputs {
        assert!(Path::new(o).exists(), "{o}");
    }
    let tomo: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("crtomo.json")).unwrap()).unwrap();
    assert!(tomo["a"]["x"].is_f64() && tomo["b"]["z"].is_f64());
}

#[test]
fn vqe_reports_deviation_fields() {
    let (code, out, _) = cli(&["vqe", "--molecule", "h2", "--zne", "--seed", "7"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let best = v["best_energy"].as_f64().unwrap();
    let exact = v["exact_energy"].as_f64().unwrap();
    assert!((v["deviation"].as_f64().unwrap() - (best - exact).abs()).abs() < 1e-12);
    assert_eq!(v["zne"], true);
    assert!(!v["trace"].as_array().unwrap().is_empty());
    assert!(v["iterations"].as_u64().unwrap() <= 500);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let noise = dir.path().join("noise.json");
    std::fs::write(&noise, r#"{"amp_sigma_rel": 0.05, "p_read": 0.02, "resample": "per_shot", "seed": 9}"#).unwrap();
    let commands: [&[&str]; 3] = [
        &["rb", "--family", "gaussian", "--sizes", "2,4", "--reps", "3", "--shots", "128"],
        &["crtomo", "--durations", "0,40,80,120,160,200,240,280,320,360", "--shots", "200"],
        &["vqe", "--molecule", "heh+", "--layers", "1", "--max-iters", "15", "--shots", "100"],
    ];
    for (k, cmd) in commands.iter().enumerate() {
        let mut files = Vec::new();
        for rep in 0..2 {
            let out = dir.path().join(format!("{k}-{rep}"));
            let mut args = cmd.to_vec();
            args.extend(["--seed", "5", "--noise", path_str(&noise), "--out", path_str(&out)]);
            assert_eq!(cli(&args).0, 0);
            let mut entries: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
            entries.sort();
            let contents: Vec<(String, String)> = entries
                .iter()
                .filter(|p| p.file_name().unwrap() != "manifest.json")
                .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(p).unwrap()))
                .collect();
            files.push(contents);
        }
        assert!(!files[0].is_empty());
        assert_eq!(files[0], files[1], "{cmd:?}");
    }
}

#[test]
fn binary_reads_device_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let device = concat!(env!("CARGO_MANIFEST_DIR"), "/data/devices/two_qubit.json");
    let status = Command::new(env!("CARGO_BIN_EXE_revpulse"))
        .args(["zne-demo", "--e1", "1", "--e3", "2", "--out", path_str(&out)])
        .env("PULSE_DEVICE_PATH", device)
        .output()
        .unwrap();
    assert!(status.status.success());
    assert_eq!(String::from_utf8(status.stdout).unwrap().trim(), "0.5");
    let m: Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["device"], device);

    let missing = Command::new(env!("CARGO_BIN_EXE_revpulse"))
        .args(["estimate", "whatever.json"])
        .env("PULSE_DEVICE_PATH", "/nonexistent/device.json")
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
