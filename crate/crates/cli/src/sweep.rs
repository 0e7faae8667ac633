//! Size and batch sweeps.
//!
//! Timing starts once generation and replication are done and stops after
//! every solution has been written to the result vector. There is no device,
//! so no transfer time is included.

use std::collections::HashMap;
use std::time::Instant;

use anyhow::{bail, ensure};
use lp2d_core::gen::derive_seed;
use lp2d_core::{
    gen, lane_imbalance, replicate, shuffle, solve, solve_batch, solve_bruteforce, Batch,
    BlockConfig, GenKind, GenSpec, Scheduler, Solution, Tolerance, DEFAULT_BLOCK_WIDTH,
    ORACLE_CAP,
};

use crate::records::{Algorithm, RunRecord, SpeedupRow};

/// Salt separating permutation seeds from problem seeds.
pub const PERM_SALT: u64 = 0x5EED_0F_0DE5;

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub block_width: usize,
    pub schedulers: Vec<Scheduler>,
    pub with_serial: bool,
    pub with_oracle: bool,
    pub tol: Tolerance,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            block_width: DEFAULT_BLOCK_WIDTH,
            schedulers: vec![Scheduler::Naive, Scheduler::Balanced],
            with_serial: true,
            with_oracle: false,
            tol: Tolerance::default(),
        }
    }
}

impl SweepOptions {
    pub fn algorithms(&self) -> Vec<Algorithm> {
        let mut algs = Vec::new();
        if self.with_serial {
            algs.push(Algorithm::Serial);
        }
        for s in &self.schedulers {
            algs.push(match s {
                Scheduler::Naive => Algorithm::Naive,
                Scheduler::Balanced => Algorithm::Balanced,
            });
        }
        if self.with_oracle {
            algs.push(Algorithm::Oracle);
        }
        algs
    }
}

pub fn checksum(solutions: &[Solution]) -> f64 {
    solutions.iter().map(|s| s.value().unwrap_or(0.0)).sum()
}

/// Runs one algorithm over a whole batch.
pub fn run_algorithm(
    alg: Algorithm,
    batch: &Batch,
    opts: &SweepOptions,
) -> anyhow::Result<(Vec<Solution>, RunStats)> {
    let tol = &opts.tol;
    match alg {
        Algorithm::Serial => {
            let mut stats = RunStats {
                imbalance: 1.0,
                ..RunStats::default()
            };
            let start = Instant::now();
            let mut out = Vec::with_capacity(batch.len());
            for (p, perm) in batch.problems().iter().zip(batch.permutations()) {
                let (s, st) = solve(p, perm, tol)?;
                stats.work_units += st.work_units;
                stats.violation_events += st.violation_events;
                out.push(s);
            }
            stats.wall_time_ns = elapsed_ns(start);
            Ok((out, stats))
        }
        Algorithm::Naive | Algorithm::Balanced => {
            let scheduler = if alg == Algorithm::Naive {
                Scheduler::Naive
            } else {
                Scheduler::Balanced
            };
            let cfg = BlockConfig::new(opts.block_width, scheduler);
            let start = Instant::now();
            let (out, lanes) = solve_batch(batch, &cfg, tol)?;
            let wall_time_ns = elapsed_ns(start);
            Ok((
                out,
                RunStats {
                    wall_time_ns,
                    work_units: lanes.total_work_units,
                    violation_events: lanes.violation_events(),
                    imbalance: lane_imbalance(&lanes).unwrap_or(1.0),
                },
            ))
        }
        Algorithm::Oracle => {
            if let Some(p) = batch.problems().iter().find(|p| p.len() > ORACLE_CAP) {
                bail!(
                    "oracle refuses problems above {ORACLE_CAP} constraints (got {})",
                    p.len()
                );
            }
            let start = Instant::now();
            let out = batch
                .problems()
                .iter()
                .map(|p| solve_bruteforce(p, tol))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((
                out,
                RunStats {
                    wall_time_ns: elapsed_ns(start),
                    imbalance: 1.0,
                    ..RunStats::default()
                },
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub wall_time_ns: u64,
    pub work_units: u64,
    pub violation_events: u64,
    pub imbalance: f64,
}

fn elapsed_ns(start: Instant) -> u64 {
    (start.elapsed().as_nanos() as u64).max(1)
}

/// Runs every configured algorithm over `batch` and records the results.
pub fn record_batch(
    batch: &Batch,
    label: &str,
    lp_size: usize,
    seed: u64,
    opts: &SweepOptions,
) -> anyhow::Result<Vec<RunRecord>> {
    opts.algorithms()
        .into_iter()
        .map(|alg| {
            let (solutions, st) = run_algorithm(alg, batch, opts)?;
            Ok(RunRecord {
                run_id: format!("{}-{label}", alg.name()),
                algorithm: alg,
                batch: batch.len(),
                lp_size,
                seed,
                wall_time_ns: st.wall_time_ns,
                work_units: st.work_units,
                violation_events: st.violation_events,
                imbalance: st.imbalance,
                value_checksum: checksum(&solutions),
            })
        })
        .collect()
}

fn instance_seed(seed: u64, batch: usize, size: usize, rep: usize) -> u64 {
    derive_seed(derive_seed(derive_seed(seed, batch as u64), size as u64), rep as u64)
}

fn sweep_point(
    batch: usize,
    size: usize,
    rep: usize,
    seed: u64,
    opts: &SweepOptions,
) -> anyhow::Result<Vec<RunRecord>> {
    ensure!(batch >= 1, "batch sizes must be at least 1");
    ensure!(size >= 1, "LP sizes must be at least 1");
    if opts.with_oracle && size > ORACLE_CAP {
        bail!("oracle refuses LP size {size}; the cap is {ORACLE_CAP}");
    }
    let iseed = instance_seed(seed, batch, size, rep);
    let problem = gen(&GenSpec::feasible(size, iseed))?;
    let b = replicate(&problem, batch, iseed ^ PERM_SALT)?;
    let label = format!("b{batch}-m{size}-r{rep}");
    record_batch(&b, &label, size, iseed, opts)
}

/// Fixed batch, varied LP size; one replicated problem per (size, rep).
pub fn sweep_size(
    batch: usize,
    sizes: &[usize],
    reps: usize,
    seed: u64,
    opts: &SweepOptions,
) -> anyhow::Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    for &size in sizes {
        for rep in 0..reps {
            out.extend(sweep_point(batch, size, rep, seed, opts)?);
        }
    }
    Ok(out)
}

/// Fixed LP size, varied batch amount.
pub fn sweep_batch(
    size: usize,
    batches: &[usize],
    reps: usize,
    seed: u64,
    opts: &SweepOptions,
) -> anyhow::Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    for &batch in batches {
        for rep in 0..reps {
            out.extend(sweep_point(batch, size, rep, seed, opts)?);
        }
    }
    Ok(out)
}

/// `count` distinct problems whose sizes cycle through `sizes`, each with
/// its own shuffled order.
pub fn mixed_batch(
    sizes: &[usize],
    count: usize,
    kind: GenKind,
    seed: u64,
) -> anyhow::Result<Batch> {
    ensure!(!sizes.is_empty(), "at least one size is required");
    let mut problems = Vec::with_capacity(count);
    let mut perms = Vec::with_capacity(count);
    for i in 0..count {
        let m = sizes[i % sizes.len()];
        let p = gen(&GenSpec::new(kind, m, derive_seed(seed, i as u64)))?;
        perms.push(shuffle(m, derive_seed(seed ^ PERM_SALT, i as u64)));
        problems.push(p);
    }
    Ok(Batch::new(problems, perms)?)
}

/// Pairs naive and balanced records by (batch, lp_size, seed), in order of
/// first appearance. An unmatched side is reported as a gap.
pub fn relative_speedup(records: &[RunRecord]) -> Vec<SpeedupRow> {
    let mut order: Vec<(usize, usize, u64)> = Vec::new();
    let mut times: HashMap<(usize, usize, u64), (Option<u64>, Option<u64>)> = HashMap::new();
    for r in records {
        let key = (r.batch, r.lp_size, r.seed);
        let slot = match r.algorithm {
            Algorithm::Naive | Algorithm::Balanced => times.entry(key).or_insert_with(|| {
                order.push(key);
                (None, None)
            }),
            _ => continue,
        };
        if r.algorithm == Algorithm::Naive {
            slot.0 = Some(r.wall_time_ns);
        } else {
            slot.1 = Some(r.wall_time_ns);
        }
    }
    order
        .into_iter()
        .map(|key| {
            let (naive_ns, balanced_ns) = times[&key];
            SpeedupRow {
                batch: key.0,
                lp_size: key.1,
                seed: key.2,
                naive_ns,
                balanced_ns,
                ratio: naive_ns
                    .zip(balanced_ns)
                    .map(|(n, b)| n as f64 / b as f64),
            }
        })
        .collect()
}
