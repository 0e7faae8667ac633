//! Experiment harness around `lp2d-core`: size and batch sweeps, the
//! naive/balanced timing table, the reduction-contention microbenchmark and
//! cross-solver verification.

pub mod contention;
pub mod records;
pub mod sweep;
pub mod verify;

pub use records::{Algorithm, ContentionRecord, Format, RunRecord, SpeedupRow};
pub use sweep::{relative_speedup, sweep_batch, sweep_size, SweepOptions};
pub use verify::{verify, VerifyReport};
