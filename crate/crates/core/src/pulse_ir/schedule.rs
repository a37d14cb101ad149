//! Channels, instructions and time-stamped schedules.

use serde::{Deserialize, Serialize};

use super::PulseShape;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Drive,
    Control,
}

/// A drive channel addresses one qubit; a control channel addresses one
/// coupling (by its index in the device's coupling list).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChannelId {
    pub kind: ChannelKind,
    pub index: usize,
}

impl ChannelId {
    pub fn drive(qubit: usize) -> Self {
        Self { kind: ChannelKind::Drive, index: qubit }
    }

    pub fn control(coupling: usize) -> Self {
        Self { kind: ChannelKind::Control, index: coupling }
    }
}

impl std::fmt::Display for ChannelId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            ChannelKind::Drive => write!(f, "d{}", self.index),
            ChannelKind::Control => write!(f, "u{}", self.index),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Instruction {
    Play { shape: PulseShape, channel: ChannelId },
    ShiftPhase { phase: f64, channel: ChannelId },
    Delay { duration: u64, channel: ChannelId },
}

impl Instruction {
    pub fn play(shape: PulseShape, channel: ChannelId) -> Self {
        Instruction::Play { shape, channel }
    }

    pub fn shift_phase(phase: f64, channel: ChannelId) -> Self {
        Instruction::ShiftPhase { phase, channel }
    }

    pub fn delay(duration: u64, channel: ChannelId) -> Self {
        Instruction::Delay { duration, channel }
    }

    pub fn duration(&self) -> u64 {
        match self {
            Instruction::Play { shape, .. } => u64::from(shape.duration),
            Instruction::ShiftPhase { .. } => 0,
            Instruction::Delay { duration, .. } => *duration,
        }
    }

    pub fn channel(&self) -> ChannelId {
        match *self {
            Instruction::Play { channel, .. }
            | Instruction::ShiftPhase { channel, .. }
            | Instruction::Delay { channel, .. } => channel,
        }
    }
}

/// An ordered list of `(start_time, instruction)` pairs.
///
/// Entries are kept sorted by start time; entries with equal start times keep
/// their insertion order. The duration is tracked explicitly: it is at least
/// the latest instruction end, and may be longer (a reversed schedule keeps
/// the duration of its source even if the source started late).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Schedule {
    entries: Vec<(u64, Instruction)>,
    duration: u64,
}

impl Schedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[(u64, Instruction)] {
        &self.entries
    }

    pub fn duration(&self) -> u64 {
        self.duration
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Adds `instruction` at `start`, rejecting parameter errors and Play
    /// overlaps on the same channel.
    pub fn insert(mut self, start: u64, instruction: Instruction) -> Result<Self> {
        match &instruction {
            Instruction::Play { shape, channel } => {
                shape.validate()?;
                let end = start + u64::from(shape.duration);
                let clash = self.entries.iter().find(|(t, other)| {
                    matches!(other, Instruction::Play { channel: c, .. } if c == channel)
                        && *t < end
                        && start < *t + other.duration()
                });
                if let Some((t, other)) = clash {
                    return Err(Error::Scheduling(format!(
                        "play on {channel} at [{start}, {end}) overlaps play at [{t}, {})",
                        t + other.duration()
                    )));
                }
            }
            Instruction::ShiftPhase { phase, .. } if !phase.is_finite() => {
                return Err(Error::Parameter("phase must be finite".into()));
            }
            _ => {}
        }
        let at = self.entries.partition_point(|(t, _)| *t <= start);
        self.duration = self.duration.max(start + instruction.duration());
        self.entries.insert(at, (start, instruction));
        Ok(self)
    }

    /// Inserts `instruction` at the current end of the schedule.
    pub fn then(self, instruction: Instruction) -> Result<Self> {
        let t = self.duration;
        self.insert(t, instruction)
    }

    /// Extends the duration to `duration`, which must cover every entry.
    pub fn with_duration(mut self, duration: u64) -> Result<Self> {
        let needed = self.content_end();
        if duration < needed {
            return Err(Error::Scheduling(format!(
                "duration {duration} shorter than the last instruction end {needed}"
            )));
        }
        self.duration = duration;
        Ok(self)
    }

    /// `b` placed after `a`; every entry of `b` shifted by `a.duration()`.
    pub fn append(&self, other: &Schedule) -> Schedule {
        let offset = self.duration;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(t, inst)| (t + offset, *inst)));
        Schedule { entries, duration: offset + other.duration }
    }

    /// Runs `other` alongside `self`, both starting at time zero.
    pub fn overlay(&self, other: &Schedule) -> Result<Schedule> {
        let mut out = self.clone();
        for &(t, inst) in &other.entries {
            out = out.insert(t, inst)?;
        }
        out.duration = out.duration.max(other.duration);
        Ok(out)
    }

    /// Latest end time over all entries.
    pub fn content_end(&self) -> u64 {
        self.entries.iter().map(|(t, i)| t + i.duration()).max().unwrap_or(0)
    }

    pub fn plays(&self) -> impl Iterator<Item = (u64, &PulseShape, ChannelId)> {
        self.entries.iter().filter_map(|(t, inst)| match inst {
            Instruction::Play { shape, channel } => Some((*t, shape, *channel)),
            _ => None,
        })
    }

    /// Applies `f` to every Play shape, keeping timing and order.
    pub fn map_plays(&self, mut f: impl FnMut(&PulseShape, ChannelId) -> PulseShape) -> Schedule {
        let entries = self
            .entries
            .iter()
            .map(|&(t, inst)| match inst {
                Instruction::Play { shape, channel } => {
                    (t, Instruction::Play { shape: f(&shape, channel), channel })
                }
                other => (t, other),
            })
            .collect();
        Schedule { entries, duration: self.duration }
    }

    /// Channels referenced by any entry, sorted.
    pub fn channels(&self) -> Vec<ChannelId> {
        let mut out: Vec<ChannelId> = self.entries.iter().map(|(_, i)| i.channel()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Sum of all ShiftPhase values on `channel`.
    pub fn total_phase(&self, channel: ChannelId) -> f64 {
        self.entries
            .iter()
            .filter_map(|(_, inst)| match inst {
                Instruction::ShiftPhase { phase, channel: c } if *c == channel => Some(*phase),
                _ => None,
            })
            .sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ScheduleRepr::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ScheduleRepr = serde_json::from_str(text)?;
        repr.try_into()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleRepr {
    duration: u64,
    entries: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum OpRepr {
    Play,
    ShiftPhase,
    Delay,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRepr {
    t: u64,
    op: OpRepr,
    channel: ChannelId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<PulseShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    len: Option<u64>,
}

impl From<&Schedule> for ScheduleRepr {
    fn from(s: &Schedule) -> Self {
        let entries = s
            .entries
            .iter()
            .map(|&(t, inst)| {
                let channel = inst.channel();
                let mut e = EntryRepr { t, op: OpRepr::Delay, channel, shape: None, phase: None, len: None };
                match inst {
                    Instruction::Play { shape, .. } => {
                        e.op = OpRepr::Play;
                        e.shape = Some(shape);
                    }
                    Instruction::ShiftPhase { phase, .. } => {
                        e.op = OpRepr::ShiftPhase;
                        e.phase = Some(phase);
                    }
                    Instruction::Delay { duration, .. } => e.len = Some(duration),
                }
                e
            })
            .collect();
        ScheduleRepr { duration: s.duration, entries }
    }
}

impl TryFrom<ScheduleRepr> for Schedule {
    type Error = Error;

    fn try_from(repr: ScheduleRepr) -> Result<Self> {
        let mut s = Schedule::new();
        for e in repr.entries {
            let missing = |field: &str| Error::Parameter(format!("entry at t={} lacks `{field}`", e.t));
            let inst = match e.op {
                OpRepr::Play => Instruction::Play { shape: e.shape.ok_or_else(|| missing("shape"))?, channel: e.channel },
                OpRepr::ShiftPhase => {
                    Instruction::ShiftPhase { phase: e.phase.ok_or_else(|| missing("phase"))?, channel: e.channel }
                }
                OpRepr::Delay => Instruction::Delay { duration: e.len.ok_or_else(|| missing("len"))?, channel: e.channel },
            };
            s = s.insert(e.t, inst)?;
        }
        s.with_duration(repr.duration)
    }
}
