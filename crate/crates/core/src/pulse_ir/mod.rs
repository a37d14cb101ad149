//! Pulse-level intermediate representation: envelopes, channels,
//! instructions and schedules.

mod schedule;
mod shape;

pub use schedule::{ChannelId, ChannelKind, Instruction, Schedule};
pub use shape::{wrap_angle, Envelope, PulseShape};
