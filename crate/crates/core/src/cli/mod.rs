//! Command-line front end.
//!
//! Every command prints its primary result to stdout. With `--out DIR` the
//! result is also written to `DIR` together with `manifest.json`, which
//! records the resolved configuration. Exit codes: 0 on success, 2 for bad
//! flags or inputs, 1 when a computation fails.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{cr_tomography, estimate_fidelity, rb_run, zne_extrapolate, PulseFamily, ZneModel};
use crate::device::DeviceModel;
use crate::noise::NoiseConfig;
use crate::pulse_ir::{PulseShape, Schedule};
use crate::simulator::{SimMode, SimOptions};
use crate::transforms::{reverse_schedule, AnsatzSpec};
use crate::vqe::{optimize, PauliHamiltonian, VqeConfig};
use crate::{Error, Result};

/// Environment variable naming the default device file.
pub const DEVICE_ENV: &str = "PULSE_DEVICE_PATH";

#[derive(Parser, Debug)]
#[command(name = "revpulse", version, about = "Pulse schedule simulation, reversal-based fidelity estimation, RB and ZNE")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Device JSON; defaults to $PULSE_DEVICE_PATH, then the bundled device.
    #[arg(long, global = true, env = DEVICE_ENV)]
    device: Option<PathBuf>,
    /// Noise JSON, or "none".
    #[arg(long, global = true, default_value = "none")]
    noise: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1024)]
    shots: u64,
    /// Exact probabilities or sampled shots.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Shots)]
    mode: Mode,
    /// Directory for output files and the run manifest.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Mode {
    Statevector,
    Shots,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Square,
    Gaussian,
    Drag,
    GaussianSquare,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the sampled envelope of one pulse as CSV (t, re, im).
    Sample {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 160)]
        duration: u32,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        amp: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        angle: f64,
        #[arg(long, allow_negative_numbers = true)]
        sigma: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        width: Option<f64>,
    },
    /// Reverse a schedule JSON file.
    Reverse {
        input: PathBuf,
    },
    /// PST of a schedule followed by its reverse.
    Estimate {
        input: PathBuf,
    },
    /// Randomized benchmarking of a pulse family.
    Rb {
        #[arg(long, default_value = "drag")]
        family: String,
        #[arg(long, value_delimiter = ',', default_value = "10,20,30,40,50,60,70,80,90,100")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        reps: usize,
    },
    /// Cross-resonance Hamiltonian tomography.
    Crtomo {
        #[arg(long, default_value_t = 0)]
        coupling: usize,
        #[arg(long, default_value_t = 0.5)]
        amp: f64,
        /// Durations in dt.
        #[arg(long, value_delimiter = ',', default_value = "0,32,64,96,128,160,192,224,256,288,320,352,384,416,448,480")]
        durations: Vec<u32>,
    },
    /// Pulse-level VQE for a molecule or Hamiltonian file.
    Vqe {
        /// Bundled molecule: h2 or heh+.
        #[arg(long, conflicts_with = "hamiltonian")]
        molecule: Option<String>,
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        layers: usize,
        #[arg(long)]
        zne: bool,
        #[arg(long, default_value_t = 500)]
        max_iters: usize,
    },
    /// Linear extrapolation of energies at fold scales 1 and 3.
    ZneDemo {
        #[arg(long, allow_negative_numbers = true)]
        e1: f64,
        #[arg(long, allow_negative_numbers = true)]
        e3: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Sample { .. } => "sample",
            Command::Reverse { .. } => "reverse",
            Command::Estimate { .. } => "estimate",
            Command::Rb { .. } => "rb",
            Command::Crtomo { .. } => "crtomo",
            Command::Vqe { .. } => "vqe",
            Command::ZneDemo { .. } => "zne-demo",
        }
    }
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    version: &'a str,
    device: String,
    noise: Option<NoiseConfig>,
    seed: u64,
    shots: u64,
    mode: Mode,
    args: Vec<String>,
    outputs: Vec<String>,
}

struct Artifact {
    file: &'static str,
    text: String,
}

struct Context {
    common: Common,
    noise: Option<NoiseConfig>,
}

impl Context {
    fn new(common: Common) -> Result<Self> {
        let noise = match common.noise.as_str() {
            "none" => None,
            path => Some(NoiseConfig::from_json(&read(Path::new(path))?)?),
        };
        Ok(Self { common, noise })
    }

    fn device(&self) -> Result<DeviceModel> {
        let mut device = match &self.common.device {
            Some(path) => DeviceModel::load(path)?,
            None => DeviceModel::two_qubit(),
        };
        device.calibrate_all()?;
        Ok(device)
    }

    fn options(&self) -> SimOptions {
        let mode = match self.common.mode {
            Mode::Statevector => SimMode::Statevector,
            Mode::Shots => SimMode::Shots,
        };
        SimOptions { shots: self.common.shots, seed: self.common.seed, mode, ..SimOptions::default() }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parameter(format!("cannot read {}: {e}", path.display())))
}

fn shape(kind: Kind, duration: u32, amp: f64, angle: f64, sigma: Option<f64>, beta: f64, width: Option<f64>) -> Result<PulseShape> {
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| Error::Parameter(format!("--{name} is required for this kind")));
    Ok(match kind {
        Kind::Square => PulseShape::square(duration, amp, angle),
        Kind::Gaussian => PulseShape::gaussian(duration, amp, angle, need(sigma, "sigma")?),
        Kind::Drag => PulseShape::drag(duration, amp, angle, need(sigma, "sigma")?, beta),
        Kind::GaussianSquare => {
            PulseShape::gaussian_square(duration, amp, angle, need(sigma, "sigma")?, need(width, "width")?)
        }
    })
}

fn execute(command: &Command, ctx: &Context) -> Result<Vec<Artifact>> {
    let options = ctx.options();
    let noise = ctx.noise.as_ref();
    Ok(match command {
        &Command::Sample { kind, duration, amp, angle, sigma, beta, width } => {
            let samples = shape(kind, duration, amp, angle, sigma, beta, width)?.envelope_samples()?;
            let mut text = String::from("t,re,im\n");
            for (t, z) in samples.iter().enumerate() {
                text.push_str(&format!("{t},{:?},{:?}\n", z.re, z.im));
            }
            vec![Artifact { file: "envelope.csv", text }]
        }
        Command::Reverse { input } => {
            let s = Schedule::from_json(&read(input)?)?;
            vec![Artifact { file: "reversed.json", text: reverse_schedule(&s)?.to_json()? + "\n" }]
        }
        Command::Estimate { input } => {
            let s = Schedule::from_json(&read(input)?)?;
            let fidelity = estimate_fidelity(&s, &ctx.device()?, noise, &options)?;
            let text = serde_json::to_string_pretty(&serde_json::json!({ "fidelity": fidelity }))? + "\n";
            vec![Artifact { file: "estimate.json", text }]
        }
        Command::Rb { family, sizes, reps } => {
            let family = PulseFamily::by_name(family)?;
            let curve = rb_run(&ctx.device()?, &family, sizes, *reps, noise, &options)?;
            vec![Artifact { file: "rb.csv", text: curve.to_csv() }]
        }
        Command::Crtomo { coupling, amp, durations } => {
            let result = cr_tomography(&ctx.device()?, *coupling, *amp, durations, &options)?;
            let summary = serde_json::json!({
                "a": { "x": result.a[0], "y": result.a[1], "z": result.a[2] },
                "b": { "x": result.b[0], "y": result.b[1], "z": result.b[2] },
                "residuals": result.residuals,
            });
            vec![
                Artifact { file: "crtomo.json", text: serde_json::to_string_pretty(&summary)? + "\n" },
                Artifact { file: "crtomo.csv", text: result.to_csv() },
            ]
        }
        Command::Vqe { molecule, hamiltonian, layers, zne, max_iters } => {
            let h = match (molecule, hamiltonian) {
                (_, Some(path)) => PauliHamiltonian::load(path)?,
                (Some(name), None) => PauliHamiltonian::molecule(name)?,
                (None, None) => return Err(Error::Parameter("one of --molecule or --hamiltonian is required".into())),
            };
            let device = ctx.device()?;
            let mut config = VqeConfig::new(AnsatzSpec::for_device(&device, *layers));
            config.options = options;
            config.optimizer.max_iters = *max_iters;
            config.zne = *zne;
            config.noise = ctx.noise;
            config.seed = ctx.common.seed;
            let result = optimize(&h, &device, &config)?;
            let exact = h.exact_ground_energy()?;
            let report = serde_json::json!({
                "best_energy": result.best_energy,
                "exact_energy": exact,
                "deviation": (result.best_energy - exact).abs(),
                "zne": zne,
                "iterations": result.iterations,
                "evaluations": result.evaluations,
                "best_params": result.best_params,
                "trace": result.trace,
            });
            vec![Artifact { file: "vqe.json", text: serde_json::to_string_pretty(&report)? + "\n" }]
        }
        &Command::ZneDemo { e1, e3 } => {
            let value = zne_extrapolate(&[(1.0, e1), (3.0, e3)], ZneModel::Linear)?;
            // Round away the last-bit noise of the two-point formula.
            vec![Artifact { file: "zne.txt", text: format!("{}\n", (value * 1e12).round() / 1e12) }]
        }
    })
}

fn write_outputs(dir: &Path, artifacts: &[Artifact], manifest: &RunManifest) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for a in artifacts {
        std::fs::write(dir.join(a.file), &a.text)?;
    }
    std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(manifest)? + "\n")?;
    Ok(())
}

/// Runs the command line `args` (program name first), writing results to
/// `stdout` and diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = Context::new(cli.common.clone()).and_then(|ctx| {
        let artifacts = execute(&cli.command, &ctx)?;
        for a in artifacts.iter().take(1) {
            stdout.write_all(a.text.as_bytes())?;
        }
        if let Some(dir) = &cli.common.out {
            let manifest = RunManifest {
                command: cli.command.name(),
                version: env!("CARGO_PKG_VERSION"),
                device: cli.common.device.as_ref().map_or("builtin".into(), |p| p.display().to_string()),
                noise: ctx.noise,
                seed: cli.common.seed,
                shots: cli.common.shots,
                mode: cli.common.mode,
                args: args.iter().skip(1).cloned().collect(),
                outputs: artifacts.iter().map(|a| dir.join(a.file).display().to_string()).collect(),
            };
            write_outputs(dir, &artifacts, &manifest)?;
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_config_error() {
                2
            } else {
                1
            }
        }
    }
}

pub fn main_with_args() -> i32 {
    run(std::env::args(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
