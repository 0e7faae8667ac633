//! Two-dimensional linear programming by Seidel's randomized incremental
//! algorithm, with a lockstep batch engine that balances 1D-LP work units
//! across the lanes of a block.

pub mod batch;
pub mod error;
pub mod format;
pub mod gen;
pub mod geometry;
pub mod oracle;
pub mod reduce;
pub mod serial;

pub use batch::{
    lane_imbalance, solve_batch, Batch, BlockConfig, IterationStats, LaneStats, Scheduler,
    WorkUnit, DEFAULT_BLOCK_WIDTH,
};
pub use error::LpError;
pub use gen::{gen, replicate, GenKind, GenSpec};
pub use geometry::{BoundClass, BoundaryLine, HalfPlane, Objective, Tolerance, Vec2};
pub use oracle::{solve_bruteforce, ORACLE_CAP};
pub use serial::{shuffle, solve, Interval1D, Permutation, Problem, Solution, SolveStats};
