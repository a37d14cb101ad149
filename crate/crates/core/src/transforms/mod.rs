//! Schedule-to-schedule rewrites: reversal, folding, Rx decomposition and
//! ansatz construction.

mod ansatz;
mod reverse;
mod rx;

pub use ansatz::{build_hea_ansatz, AnsatzSpec};
pub use reverse::{fold_schedule, reverse_schedule};
pub use rx::{build_rx, RotationBuilder};
