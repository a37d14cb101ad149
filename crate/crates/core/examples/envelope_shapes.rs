//! Samples the four envelope families and prints a coarse table.
//!
//! cargo run --release --example envelope_shapes

use revpulse::pulse_ir::PulseShape;

fn main() -> revpulse::Result<()> {
    let shapes = [
        ("square", PulseShape::square(160, 0.5, 0.0)),
        ("gaussian", PulseShape::gaussian(160, 0.5, 0.0, 40.0)),
        ("drag", PulseShape::drag(160, 0.5, 0.0, 40.0, 0.5)),
        ("gaussian_square", PulseShape::gaussian_square(160, 0.5, 0.0, 16.0, 96.0)),
    ];
    let sampled: Vec<_> = shapes
        .iter()
        .map(|(name, s)| s.envelope_samples().map(|v| (*name, v)))
        .collect::<revpulse::Result<_>>()?;

    print!("{:>4}", "t");
    for (name, _) in &sampled {
        print!(" {name:>24}");
    }
    println!();
    for t in (0..160).step_by(16).chain([79, 80, 159]) {
        print!("{t:>4}");
        for (_, v) in &sampled {
            print!(" {:>11.5} {:>+11.5}i", v[t].re, v[t].im);
        }
        println!();
    }

    // A bad sigma is rejected when the envelope is sampled.
    match PulseShape::drag(160, 0.5, 0.0, 0.0, 0.5).envelope_samples() {
        Ok(_) => println!("unexpected: sigma 0 accepted"),
        Err(e) => println!("sigma 0: {e}"),
    }
    Ok(())
}
