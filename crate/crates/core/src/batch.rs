//! Lockstep batch engine.
//!
//! Problems are packed into blocks of `block_width` lanes, one problem per
//! lane. Every lane of a block considers its `step`-th constraint at the same
//! time. Lanes whose optimum is violated need a 1D LP over the `n` constraints
//! considered so far; each such classification is a work unit (WU).
//!
//! * [`Scheduler::Naive`] runs each lane's own `n` WUs on that lane, so the
//!   block spends `n` lockstep steps while satisfied lanes sit masked.
//! * [`Scheduler::Balanced`] enumerates the `active * n` WUs of the iteration
//!   and deals them round-robin across all lanes, finishing in
//!   `ceil(active * n / block_width)` steps.
//!
//! The emulator executes every lane in every lockstep step. A masked lane
//! evaluates a throwaway classification, so wall time tracks lane occupancy
//! the way a SIMD machine's would. Shared `(u_left, u_right)` slots are
//! updated with exact min/max folds, which makes results independent of the
//! order WUs land in and identical to the serial solver.

use std::hint::black_box;

use rayon::prelude::*;

use crate::error::LpError;
use crate::geometry::{
    boundary_of, classify, satisfied, BoundClass, BoundaryLine, HalfPlane, Tolerance, Vec2,
};
use crate::serial::{
    box_constraints, check_permutation, initial_optimum, Interval1D, Permutation, Problem,
    Solution, BOX_CONSTRAINTS,
};

pub const DEFAULT_BLOCK_WIDTH: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    problems: Vec<Problem>,
    permutations: Vec<Permutation>,
}

impl Batch {
    pub fn new(problems: Vec<Problem>, permutations: Vec<Permutation>) -> Result<Self, LpError> {
        if problems.is_empty() {
            return Err(LpError::EmptyBatch);
        }
        if problems.len() != permutations.len() {
            return Err(LpError::BatchLengthMismatch {
                problems: problems.len(),
                permutations: permutations.len(),
            });
        }
        for (p, perm) in problems.iter().zip(&permutations) {
            check_permutation(p, perm)?;
        }
        Ok(Batch {
            problems,
            permutations,
        })
    }

    pub fn problems(&self) -> &[Problem] {
        &self.problems
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.permutations
    }

    pub fn len(&self) -> usize {
        self.problems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheduler {
    Naive,
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockConfig {
    pub block_width: usize,
    pub scheduler: Scheduler,
    /// Record per-lane WU counts for every iteration.
    pub trace_lanes: bool,
}

impl Default for BlockConfig {
    fn default() -> Self {
        BlockConfig {
            block_width: DEFAULT_BLOCK_WIDTH,
            scheduler: Scheduler::Balanced,
            trace_lanes: false,
        }
    }
}

impl BlockConfig {
    pub fn new(block_width: usize, scheduler: Scheduler) -> Self {
        BlockConfig {
            block_width,
            scheduler,
            trace_lanes: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkUnit {
    /// Lane of the problem within its block.
    pub problem_index: usize,
    /// Position in that problem's considered prefix (box constraints first).
    pub constraint_index: usize,
}

/// Number of set flags.
pub fn block_reduce_sum(flags: &[bool]) -> usize {
    flags.iter().filter(|&&f| f).count()
}

/// Lanes with a set flag, in ascending order.
pub fn compact(flags: &[bool]) -> Vec<usize> {
    flags
        .iter()
        .enumerate()
        .filter_map(|(lane, &f)| f.then_some(lane))
        .collect()
}

/// The `j`-th work unit of an iteration with `active` problems each needing
/// `n` classifications.
#[inline]
pub fn map_wu(j: usize, active: &[usize], n: usize) -> WorkUnit {
    debug_assert!(j < active.len() * n);
    WorkUnit {
        problem_index: active[j / n],
        constraint_index: j % n,
    }
}

/// Folds one classification into a shared slot.
#[inline]
pub fn shared_extreme_update(mut slot: Interval1D, cls: BoundClass) -> Interval1D {
    slot.update(cls);
    slot
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationStats {
    pub block: usize,
    pub step: usize,
    /// Lanes whose optimum the step's constraint violated.
    pub active: usize,
    /// Constraints considered before this step, box included.
    pub n: usize,
    pub wu_count: u64,
    pub lockstep_steps: u64,
    pub masked_lane_steps: u64,
    /// Per-lane WU counts; empty unless tracing is enabled.
    pub lane_wu: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaneStats {
    pub block_width: usize,
    pub blocks: usize,
    /// WU totals for every lane slot, block-major (`blocks * block_width`).
    pub lane_totals: Vec<u64>,
    /// Iterations with at least one active lane.
    pub iterations: Vec<IterationStats>,
    pub total_work_units: u64,
    pub lockstep_steps: u64,
    pub masked_lane_steps: u64,
    /// Per-problem violation events, in batch order.
    pub problem_events: Vec<u64>,
    /// Per-problem WUs, in batch order.
    pub problem_work: Vec<u64>,
}

impl LaneStats {
    pub fn violation_events(&self) -> u64 {
        self.problem_events.iter().sum()
    }

    pub fn block_lanes(&self, block: usize) -> &[u64] {
        &self.lane_totals[block * self.block_width..(block + 1) * self.block_width]
    }
}

/// Max-lane WU total over mean-lane WU total, across every lane slot.
pub fn lane_imbalance(stats: &LaneStats) -> Result<f64, LpError> {
    let total: u64 = stats.lane_totals.iter().sum();
    if total == 0 {
        return Err(LpError::NoWork);
    }
    let max = *stats.lane_totals.iter().max().expect("nonzero total");
    let mean = total as f64 / stats.lane_totals.len() as f64;
    Ok(max as f64 / mean)
}

pub fn solve_batch(
    b: &Batch,
    cfg: &BlockConfig,
    tol: &Tolerance,
) -> Result<(Vec<Solution>, LaneStats), LpError> {
    if cfg.block_width == 0 {
        return Err(LpError::ZeroBlockWidth);
    }
    tol.validate()?;
    let width = cfg.block_width;
    let results: Vec<BlockOutcome> = b
        .problems
        .par_chunks(width)
        .zip(b.permutations.par_chunks(width))
        .enumerate()
        .map(|(block, (problems, perms))| run_block(block, problems, perms, cfg, tol))
        .collect();

    let mut solutions = Vec::with_capacity(b.len());
    let mut stats = LaneStats {
        block_width: width,
        blocks: results.len(),
        ..LaneStats::default()
    };
    for r in results {
        solutions.extend(r.solutions);
        stats.total_work_units += r.lane_totals.iter().sum::<u64>();
        stats.lane_totals.extend(r.lane_totals);
        stats.iterations.extend(r.iterations);
        stats.lockstep_steps += r.lockstep_steps;
        stats.masked_lane_steps += r.masked_lane_steps;
        stats.problem_events.extend(r.problem_events);
        stats.problem_work.extend(r.problem_work);
    }
    Ok((solutions, stats))
}

struct BlockOutcome {
    solutions: Vec<Solution>,
    lane_totals: Vec<u64>,
    iterations: Vec<IterationStats>,
    lockstep_steps: u64,
    masked_lane_steps: u64,
    problem_events: Vec<u64>,
    problem_work: Vec<u64>,
}

/// Per-lane state of a block. Lanes past the end of the batch hold no
/// problem but still take part in the balanced WU distribution.
struct Lanes<'a> {
    problems: &'a [Problem],
    /// Box constraints followed by the permuted user constraints.
    ordered: Vec<Vec<HalfPlane>>,
    current: Vec<Option<Vec2>>,
    lines: Vec<BoundaryLine>,
    slots: Vec<Interval1D>,
    flags: Vec<bool>,
    idle: (HalfPlane, BoundaryLine),
}

fn run_block(
    block: usize,
    problems: &[Problem],
    perms: &[Permutation],
    cfg: &BlockConfig,
    tol: &Tolerance,
) -> BlockOutcome {
    let width = cfg.block_width;
    let filled = problems.len();
    let placeholder = BoundaryLine {
        origin: Vec2::ZERO,
        dir: Vec2::new(1.0, 0.0),
    };
    let mut lanes = Lanes {
        problems,
        ordered: problems
            .iter()
            .zip(perms)
            .map(|(p, perm)| {
                let mut v = Vec::with_capacity(BOX_CONSTRAINTS + p.len());
                v.extend(box_constraints(p.bound_m()));
                v.extend(perm.as_slice().iter().map(|&i| p.constraints()[i]));
                v
            })
            .collect(),
        current: problems
            .iter()
            .map(|p| Some(initial_optimum(p.objective(), p.bound_m())))
            .collect(),
        lines: vec![placeholder; width],
        slots: vec![Interval1D::new(); width],
        flags: vec![false; width],
        idle: (HalfPlane::of(1.0, 0.0, 1.0), boundary_of(&HalfPlane::of(0.0, 1.0, 1.0))),
    };

    let mut out = BlockOutcome {
        solutions: Vec::with_capacity(filled),
        lane_totals: vec![0; width],
        iterations: Vec::new(),
        lockstep_steps: 0,
        masked_lane_steps: 0,
        problem_events: vec![0; filled],
        problem_work: vec![0; filled],
    };

    let lp_max = problems.iter().map(Problem::len).max().unwrap_or(0);
    for step in 0..lp_max {
        let n = BOX_CONSTRAINTS + step;

        // Phase 1: each live lane tests its step-th constraint.
        let mut live = false;
        for lane in 0..width {
            lanes.flags[lane] = false;
            if lane >= filled || step >= problems[lane].len() {
                continue;
            }
            let Some(point) = lanes.current[lane] else {
                continue;
            };
            live = true;
            let h = &lanes.ordered[lane][n];
            if !satisfied(h, point, tol) {
                lanes.flags[lane] = true;
                lanes.lines[lane] = boundary_of(h);
                lanes.slots[lane] = Interval1D::new();
            }
        }
        if !live {
            break;
        }
        let active_threads = block_reduce_sum(&lanes.flags);
        if active_threads == 0 {
            continue;
        }
        let active = compact(&lanes.flags);
        let wu_count = (active_threads * n) as u64;

        // Phase 2: work units.
        let mut lane_wu = if cfg.trace_lanes {
            vec![0u32; width]
        } else {
            Vec::new()
        };
        let steps = match cfg.scheduler {
            Scheduler::Naive => naive_phase(&mut lanes, n, width, tol, &mut out, &mut lane_wu),
            Scheduler::Balanced => {
                balanced_phase(&mut lanes, &active, n, width, tol, &mut out, &mut lane_wu)
            }
        };
        let masked = steps * width as u64 - wu_count;
        out.lockstep_steps += steps;
        out.masked_lane_steps += masked;

        // Phase 3: every slot is complete; move the violated lanes.
        for &lane in &active {
            let p = &lanes.problems[lane];
            lanes.current[lane] = lanes.slots[lane].resolve(&lanes.lines[lane], p.objective(), tol);
            out.problem_events[lane] += 1;
            out.problem_work[lane] += n as u64;
        }

        out.iterations.push(IterationStats {
            block,
            step,
            active: active_threads,
            n,
            wu_count,
            lockstep_steps: steps,
            masked_lane_steps: masked,
            lane_wu,
        });
    }

    out.solutions = problems
        .iter()
        .zip(&lanes.current)
        .map(|(p, cur)| match cur {
            Some(point) => Solution::optimal(p.objective(), *point),
            None => Solution::Infeasible,
        })
        .collect();
    out
}

/// Classification performed by a masked lane; the result is discarded.
#[inline(always)]
fn idle_lane(idle: &(HalfPlane, BoundaryLine), tol: &Tolerance) {
    black_box(classify(black_box(&idle.0), black_box(&idle.1), tol));
}

fn naive_phase(
    lanes: &mut Lanes,
    n: usize,
    width: usize,
    tol: &Tolerance,
    out: &mut BlockOutcome,
    lane_wu: &mut [u32],
) -> u64 {
    for k in 0..n {
        for lane in 0..width {
            if lanes.flags[lane] {
                let cls = classify(&lanes.ordered[lane][k], &lanes.lines[lane], tol);
                lanes.slots[lane] = shared_extreme_update(lanes.slots[lane], cls);
            } else {
                idle_lane(&lanes.idle, tol);
            }
        }
    }
    for lane in 0..width {
        if lanes.flags[lane] {
            out.lane_totals[lane] += n as u64;
            if let Some(c) = lane_wu.get_mut(lane) {
                *c += n as u32;
            }
        }
    }
    n as u64
}

fn balanced_phase(
    lanes: &mut Lanes,
    active: &[usize],
    n: usize,
    width: usize,
    tol: &Tolerance,
    out: &mut BlockOutcome,
    lane_wu: &mut [u32],
) -> u64 {
    let wu_count = active.len() * n;
    let steps = wu_count.div_ceil(width);
    for s in 0..steps {
        let base = s * width;
        for lane in 0..width {
            let j = base + lane;
            if j < wu_count {
                let wu = map_wu(j, active, n);
                let owner = wu.problem_index;
                let cls = classify(
                    &lanes.ordered[owner][wu.constraint_index],
                    &lanes.lines[owner],
                    tol,
                );
                lanes.slots[owner] = shared_extreme_update(lanes.slots[owner], cls);
            } else {
                idle_lane(&lanes.idle, tol);
            }
        }
    }
    // Lane `lane` handled every j = lane + s * width below wu_count.
    for lane in 0..width.min(wu_count) {
        let count = (wu_count - lane).div_ceil(width) as u64;
        out.lane_totals[lane] += count;
        if let Some(c) = lane_wu.get_mut(lane) {
            *c += count as u32;
        }
    }
    steps as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen, GenSpec};
    use crate::geometry::Objective;
    use crate::serial::{shuffle, solve};
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn unit_square(count: usize) -> Batch {
        let c = Objective::new(Vec2::new(1.0, 1.0)).unwrap();
        let p = Problem::with_default_bound(c, vec![HalfPlane::of(1.0, 0.0, 1.0), HalfPlane::of(0.0, 1.0, 1.0)]);
        Batch::new(vec![p; count], vec![Permutation::identity(2); count]).unwrap()
    }

    fn random_batch(sizes: &[usize], seed: u64) -> Batch {
        let problems: Vec<_> = sizes
            .iter()
            .enumerate()
            .map(|(i, &m)| gen(&GenSpec::feasible(m, seed + i as u64)).unwrap())
            .collect();
        let perms = problems
            .iter()
            .enumerate()
            .map(|(i, p)| shuffle(p.len(), seed ^ (i as u64 + 1)))
            .collect();
        Batch::new(problems, perms).unwrap()
    }

    fn serial(b: &Batch) -> Vec<(Solution, crate::serial::SolveStats)> {
        b.problems()
            .iter()
            .zip(b.permutations())
            .map(|(p, perm)| solve(p, perm, &tol()).unwrap())
            .collect()
    }

    fn traced(width: usize, scheduler: Scheduler) -> BlockConfig {
        BlockConfig {
            trace_lanes: true,
            ..BlockConfig::new(width, scheduler)
        }
    }

    #[test]
    fn reduce_sum_and_compact() {
        let flags = [true, false, true, true];
        assert_eq!(block_reduce_sum(&flags), 3);
        assert_eq!(compact(&flags), [0, 2, 3]);
        assert_eq!(block_reduce_sum(&[false; 8]), 0);
        assert!(compact(&[]).is_empty());
    }

    #[test]
    fn map_wu_examples() {
        let active = [2, 5, 7];
        assert_eq!(
            map_wu(0, &active, 4),
            WorkUnit { problem_index: 2, constraint_index: 0 }
        );
        assert_eq!(
            map_wu(5, &active, 4),
            WorkUnit { problem_index: 5, constraint_index: 1 }
        );
        assert_eq!(
            map_wu(11, &active, 4),
            WorkUnit { problem_index: 7, constraint_index: 3 }
        );
    }

    #[test]
    fn shared_update_examples() {
        let s = shared_extreme_update(Interval1D::new(), BoundClass::BoundedLeft(-2.0));
        let s = shared_extreme_update(s, BoundClass::BoundedRight(3.0));
        let s = shared_extreme_update(s, BoundClass::BoundedLeft(-5.0));
        let s = shared_extreme_update(s, BoundClass::ParallelRedundant);
        assert_eq!((s.u_left, s.u_right, s.infeasible), (-2.0, 3.0, false));
        let s = shared_extreme_update(s, BoundClass::ParallelInfeasible);
        assert!(s.infeasible);
    }

    #[test]
    fn unit_square_batch() {
        let b = unit_square(4);
        for s in [Scheduler::Naive, Scheduler::Balanced] {
            let (sol, stats) = solve_batch(&b, &BlockConfig::new(512, s), &tol()).unwrap();
            assert_eq!(sol, vec![Solution::optimal(b.problems()[0].objective(), Vec2::new(1.0, 1.0)); 4]);
            assert_eq!(sol[0].value(), Some(2.0));
            assert_eq!(stats.problem_events, [2; 4]);
            // 4 + 5 WUs per problem.
            assert_eq!(stats.total_work_units, 36);
        }
    }

    #[test]
    fn feasible_and_infeasible_match_serial() {
        let problems = vec![
            gen(&GenSpec::feasible(32, 7)).unwrap(),
            gen(&GenSpec::infeasible(32, 9)).unwrap(),
        ];
        let perms = vec![shuffle(32, 1), shuffle(32, 2)];
        let b = Batch::new(problems, perms).unwrap();
        let expected = serial(&b);
        assert!(expected[1].0.is_infeasible());
        for s in [Scheduler::Naive, Scheduler::Balanced] {
            let (sol, stats) = solve_batch(&b, &BlockConfig::new(512, s), &tol()).unwrap();
            assert_eq!(sol, expected.iter().map(|e| e.0).collect::<Vec<_>>());
            for (i, e) in expected.iter().enumerate() {
                assert_eq!(stats.problem_events[i], e.1.violation_events);
                assert_eq!(stats.problem_work[i], e.1.work_units);
            }
        }
    }

    #[test]
    fn mixed_sizes_balanced_equals_naive() {
        let sizes: Vec<usize> = (0..40).map(|i| if i % 2 == 0 { 8 } else { 300 }).collect();
        let b = random_batch(&sizes, 11);
        let expected: Vec<_> = serial(&b).into_iter().map(|e| e.0).collect();
        for w in [1, 7, 32, 512] {
            let (naive, ns) = solve_batch(&b, &BlockConfig::new(w, Scheduler::Naive), &tol()).unwrap();
            let (bal, bs) = solve_batch(&b, &BlockConfig::new(w, Scheduler::Balanced), &tol()).unwrap();
            assert_eq!(naive, expected, "width {w}");
            assert_eq!(bal, expected, "width {w}");
            assert_eq!(ns.total_work_units, bs.total_work_units);
            assert_eq!(ns.lane_totals.len(), w * b.len().div_ceil(w));
            assert!(bs.lockstep_steps <= ns.lockstep_steps);
        }
    }

    #[test]
    fn imbalance_examples() {
        let mut stats = LaneStats {
            block_width: 4,
            blocks: 1,
            lane_totals: vec![5; 4],
            ..LaneStats::default()
        };
        assert_eq!(lane_imbalance(&stats).unwrap(), 1.0);
        stats.lane_totals = vec![0, 9, 0, 0];
        assert_eq!(lane_imbalance(&stats).unwrap(), 4.0);
        stats.lane_totals = vec![0; 4];
        assert!(matches!(lane_imbalance(&stats), Err(LpError::NoWork)));
    }

    #[test]
    fn work_is_conserved_per_iteration() {
        let b = random_batch(&[5, 60, 17, 120, 3, 90], 21);
        for s in [Scheduler::Naive, Scheduler::Balanced] {
            let (_, stats) = solve_batch(&b, &traced(4, s), &tol()).unwrap();
            assert!(!stats.iterations.is_empty());
            for it in &stats.iterations {
                let sum: u64 = it.lane_wu.iter().map(|&c| c as u64).sum();
                assert_eq!(sum, it.wu_count);
                assert_eq!(it.wu_count, (it.active * it.n) as u64);
                assert_eq!(it.masked_lane_steps, it.lockstep_steps * 4 - it.wu_count);
                match s {
                    Scheduler::Naive => {
                        assert_eq!(it.lockstep_steps, it.n as u64);
                        assert_eq!(it.lane_wu.iter().filter(|&&c| c > 0).count(), it.active);
                        assert!(it.lane_wu.iter().all(|&c| c == 0 || c as usize == it.n));
                    }
                    Scheduler::Balanced => {
                        assert_eq!(it.lockstep_steps, it.wu_count.div_ceil(4));
                        let max = *it.lane_wu.iter().max().unwrap();
                        let min = *it.lane_wu.iter().min().unwrap();
                        assert!(max - min <= 1);
                    }
                }
            }
            let iter_total: u64 = stats.iterations.iter().map(|it| it.wu_count).sum();
            assert_eq!(iter_total, stats.total_work_units);
            assert_eq!(stats.problem_work.iter().sum::<u64>(), stats.total_work_units);
        }
    }

    #[test]
    fn untraced_runs_keep_no_lane_vectors() {
        let b = random_batch(&[10, 20], 3);
        let (_, stats) = solve_batch(&b, &BlockConfig::default(), &tol()).unwrap();
        assert!(stats.iterations.iter().all(|it| it.lane_wu.is_empty()));
    }

    #[test]
    fn deterministic_across_runs() {
        let b = random_batch(&[50, 200, 13, 77, 400], 5);
        for s in [Scheduler::Naive, Scheduler::Balanced] {
            let cfg = traced(2, s);
            let first = solve_batch(&b, &cfg, &tol()).unwrap();
            let second = solve_batch(&b, &cfg, &tol()).unwrap();
            assert_eq!(first, second);
        }
    }

    #[test]
    fn partial_blocks_leave_tail_lanes_idle_under_naive() {
        let b = random_batch(&[40, 40, 40], 8);
        let (_, stats) = solve_batch(&b, &BlockConfig::new(8, Scheduler::Naive), &tol()).unwrap();
        assert_eq!(stats.blocks, 1);
        assert!(stats.block_lanes(0)[3..].iter().all(|&c| c == 0));
        assert!(stats.block_lanes(0)[..3].iter().all(|&c| c > 0));
    }

    #[test]
    fn rejects_bad_input() {
        let b = unit_square(1);
        assert!(matches!(
            solve_batch(&b, &BlockConfig::new(0, Scheduler::Naive), &tol()),
            Err(LpError::ZeroBlockWidth)
        ));
        assert!(matches!(Batch::new(vec![], vec![]), Err(LpError::EmptyBatch)));
        let p = b.problems()[0].clone();
        assert!(matches!(
            Batch::new(vec![p.clone(), p.clone()], vec![Permutation::identity(2)]),
            Err(LpError::BatchLengthMismatch { .. })
        ));
        assert!(Batch::new(vec![p], vec![Permutation::identity(3)]).is_err());
    }

    fn bound_class() -> impl Strategy<Value = BoundClass> {
        prop_oneof![
            (-1e3f64..1e3).prop_map(BoundClass::BoundedLeft),
            (-1e3f64..1e3).prop_map(BoundClass::BoundedRight),
            Just(BoundClass::ParallelRedundant),
            Just(BoundClass::ParallelInfeasible),
        ]
    }

    proptest! {
        #[test]
        fn shared_update_is_order_independent(seq in prop::collection::vec(bound_class(), 0..=16)) {
            let fwd = seq.iter().fold(Interval1D::new(), |s, &c| shared_extreme_update(s, c));
            let rev = seq.iter().rev().fold(Interval1D::new(), |s, &c| shared_extreme_update(s, c));
            prop_assert_eq!(fwd.u_left.to_bits(), rev.u_left.to_bits());
            prop_assert_eq!(fwd.u_right.to_bits(), rev.u_right.to_bits());
            prop_assert_eq!(fwd.infeasible, rev.infeasible);
        }

        #[test]
        fn schedulers_agree_with_serial(
            sizes in prop::collection::vec(1usize..80, 1..24),
            width in 1usize..16,
            seed in any::<u64>(),
        ) {
            let b = random_batch(&sizes, seed >> 1);
            let expected: Vec<_> = serial(&b).into_iter().map(|e| e.0).collect();
            let (naive, _) = solve_batch(&b, &BlockConfig::new(width, Scheduler::Naive), &tol()).unwrap();
            let (bal, _) = solve_batch(&b, &BlockConfig::new(width, Scheduler::Balanced), &tol()).unwrap();
            prop_assert_eq!(&naive, &expected);
            prop_assert_eq!(&bal, &expected);
        }
    }
}
