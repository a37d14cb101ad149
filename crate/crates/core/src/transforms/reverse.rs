use std::f64::consts::PI;

use crate::pulse_ir::{Envelope, Instruction, Schedule};
use crate::{Error, Result};

/// Time-mirrors `s` so that running it after `s` undoes `s`.
///
/// With `D = s.duration()`: ShiftPhase(φ) at `t` becomes ShiftPhase(−φ) at
/// `D − t`; Play at `t` becomes the same pulse with `angle + π` at
/// `D − t − d`; Delay at `t` moves to `D − t − d`. DRAG pulses also get
/// `beta → −beta`, since the mirrored DRAG envelope is `g − i·β·g′`.
pub fn reverse_schedule(s: &Schedule) -> Result<Schedule> {
    let d = s.duration();
    let mut out = Schedule::new();
    // Walk backwards so that instructions sharing a timestamp keep a mirrored
    // relative order.
    for &(t, inst) in s.entries().iter().rev() {
        let (start, mirrored) = match inst {
            Instruction::ShiftPhase { phase, channel } => (d - t, Instruction::ShiftPhase { phase: -phase, channel }),
            Instruction::Play { shape, channel } => {
                let mut shape = shape;
                shape.angle += PI;
                if let Envelope::Drag { sigma, beta } = shape.envelope {
                    shape.envelope = Envelope::Drag { sigma, beta: -beta };
                }
                (d - t - u64::from(shape.duration), Instruction::Play { shape, channel })
            }
            Instruction::Delay { duration, channel } => (d - t - duration, Instruction::Delay { duration, channel }),
        };
        out = out
            .insert(start, mirrored)
            .map_err(|e| Error::Transform(format!("reversal produced an invalid schedule: {e}")))?;
    }
    out.with_duration(d)
}

/// Noise-scaled copy of `s` with the same ideal action: `s` followed by
/// `(scale − 1)/2` repetitions of `rev(s)·s`.
pub fn fold_schedule(s: &Schedule, scale: u32) -> Result<Schedule> {
    if scale == 0 || scale.is_multiple_of(2) {
        return Err(Error::Parameter(format!("fold scale must be an odd positive integer, got {scale}")));
    }
    let pair = reverse_schedule(s)?.append(s);
    let mut out = s.clone();
    for _ in 0..(scale - 1) / 2 {
        out = out.append(&pair);
    }
    Ok(out)
}
