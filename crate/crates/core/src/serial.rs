//! Reference sequential solver: Seidel's randomized incremental algorithm in
//! two dimensions.
//!
//! The four box constraints `x <= M`, `-x <= M`, `y <= M`, `-y <= M` are always
//! considered first, in that order, so every intermediate optimum is a finite
//! point. User constraints follow in the caller's permutation order. When a
//! constraint excludes the current optimum, the new optimum is found by a 1D
//! LP along that constraint's boundary over everything considered earlier.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::LpError;
use crate::geometry::{
    boundary_of, classify, objective_value, satisfied, BoundClass, BoundaryLine, HalfPlane,
    Objective, Tolerance, Vec2,
};

pub const DEFAULT_BOUND: f64 = 1e7;
pub const BOX_CONSTRAINTS: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    objective: Objective,
    constraints: Vec<HalfPlane>,
    bound_m: f64,
}

impl Problem {
    pub fn new(
        objective: Objective,
        constraints: Vec<HalfPlane>,
        bound_m: f64,
    ) -> Result<Self, LpError> {
        if !(bound_m > 0.0 && bound_m.is_finite()) {
            return Err(LpError::InvalidBound(bound_m));
        }
        Ok(Problem {
            objective,
            constraints,
            bound_m,
        })
    }

    pub fn with_default_bound(objective: Objective, constraints: Vec<HalfPlane>) -> Self {
        Problem::new(objective, constraints, DEFAULT_BOUND).expect("default bound is valid")
    }

    #[inline]
    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    #[inline]
    pub fn constraints(&self) -> &[HalfPlane] {
        &self.constraints
    }

    #[inline]
    pub fn bound_m(&self) -> f64 {
        self.bound_m
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn box_constraints(&self) -> [HalfPlane; BOX_CONSTRAINTS] {
        box_constraints(self.bound_m)
    }
}

pub fn box_constraints(bound_m: f64) -> [HalfPlane; BOX_CONSTRAINTS] {
    [
        HalfPlane::of(1.0, 0.0, bound_m),
        HalfPlane::of(-1.0, 0.0, bound_m),
        HalfPlane::of(0.0, 1.0, bound_m),
        HalfPlane::of(0.0, -1.0, bound_m),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solution {
    Optimal { point: Vec2, value: f64 },
    Infeasible,
}

impl Solution {
    pub fn optimal(c: &Objective, point: Vec2) -> Self {
        Solution::Optimal {
            point,
            value: objective_value(c, point),
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Solution::Optimal { value, .. } => Some(*value),
            Solution::Infeasible => None,
        }
    }

    pub fn point(&self) -> Option<Vec2> {
        match self {
            Solution::Optimal { point, .. } => Some(*point),
            Solution::Infeasible => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Solution::Infeasible)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::Optimal { point, value } => {
                write!(f, "optimal x=({:e}, {:e}) value={:e}", point.x, point.y, value)
            }
            Solution::Infeasible => f.write_str("infeasible"),
        }
    }
}

/// Running bounds `(u_left, u_right)` on the feasible segment of a line.
///
/// Updates are max/min folds, so the result is independent of the order in
/// which classifications arrive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval1D {
    pub u_left: f64,
    pub u_right: f64,
    pub infeasible: bool,
}

impl Default for Interval1D {
    fn default() -> Self {
        Interval1D::new()
    }
}

impl Interval1D {
    pub const fn new() -> Self {
        Interval1D {
            u_left: f64::NEG_INFINITY,
            u_right: f64::INFINITY,
            infeasible: false,
        }
    }

    #[inline]
    pub fn update(&mut self, cls: BoundClass) {
        match cls {
            BoundClass::BoundedLeft(s) => {
                if s > self.u_left {
                    self.u_left = s;
                }
            }
            BoundClass::BoundedRight(s) => {
                if s < self.u_right {
                    self.u_right = s;
                }
            }
            BoundClass::ParallelRedundant => {}
            BoundClass::ParallelInfeasible => self.infeasible = true,
        }
    }

    #[inline]
    pub fn merge(&mut self, other: &Interval1D) {
        if other.u_left > self.u_left {
            self.u_left = other.u_left;
        }
        if other.u_right < self.u_right {
            self.u_right = other.u_right;
        }
        self.infeasible |= other.infeasible;
    }

    /// True when no point of the line survives.
    pub fn is_empty(&self, tol: &Tolerance) -> bool {
        let magnitude = self.u_left.abs().max(self.u_right.abs());
        self.infeasible || self.u_left > self.u_right + tol.slack(magnitude)
    }

    /// Optimum of `c` on the segment, or `None` if the segment is empty.
    ///
    /// Picks `u_right` when `c` increases along the line, otherwise `u_left`
    /// (including the tie where `c` is perpendicular to the line).
    pub fn resolve(&self, l: &BoundaryLine, c: &Objective, tol: &Tolerance) -> Option<Vec2> {
        if self.is_empty(tol) {
            return None;
        }
        let cv = c.coefficients();
        let slope = cv.dot(l.dir);
        let t = if slope > tol.eps_parallel * cv.length() {
            self.u_right
        } else {
            self.u_left
        };
        debug_assert!(t.is_finite(), "1D LP is unbounded; box constraints missing");
        Some(l.at(t))
    }
}

/// A bijection on `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    pub fn from_vec(order: Vec<usize>) -> Result<Self, LpError> {
        let mut seen = vec![false; order.len()];
        for &i in &order {
            if i >= order.len() || seen[i] {
                return Err(LpError::NotAPermutation(i));
            }
            seen[i] = true;
        }
        Ok(Permutation(order))
    }

    #[inline]
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Seeded uniform permutation by a Fisher-Yates pass over ChaCha8.
pub fn shuffle(m: usize, seed: u64) -> Permutation {
    let mut order: Vec<usize> = (0..m).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    Permutation(order)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Constraints that excluded the intermediate optimum.
    pub violation_events: u64,
    /// Constraint classifications performed inside 1D LPs.
    pub work_units: u64,
}

/// Corner of the `[-M, M]^2` box that maximizes `c`. Zero components take `+M`.
pub fn initial_optimum(c: &Objective, bound_m: f64) -> Vec2 {
    let cv = c.coefficients();
    let pick = |v: f64| if v < 0.0 { -bound_m } else { bound_m };
    Vec2::new(pick(cv.x), pick(cv.y))
}

/// Optimum of `c` on the line `l` subject to `considered`, or `None` if the
/// feasible segment is empty.
pub fn solve_1d(
    l: &BoundaryLine,
    considered: &[HalfPlane],
    c: &Objective,
    tol: &Tolerance,
) -> Option<Vec2> {
    let mut interval = Interval1D::new();
    for h in considered {
        interval.update(classify(h, l, tol));
        if interval.infeasible {
            return None;
        }
    }
    interval.resolve(l, c, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// The current optimum already satisfies the constraint.
    Kept,
    /// The optimum moved onto the constraint's boundary.
    Moved,
    /// The constraint emptied the feasible region.
    Infeasible,
}

/// Incremental solver state; constraints are fed one at a time.
#[derive(Debug, Clone)]
pub struct Incremental {
    objective: Objective,
    tol: Tolerance,
    considered: Vec<HalfPlane>,
    current: Option<Vec2>,
    stats: SolveStats,
}

impl Incremental {
    pub fn new(objective: Objective, bound_m: f64, tol: Tolerance) -> Self {
        Incremental {
            objective,
            tol,
            considered: box_constraints(bound_m).to_vec(),
            current: Some(initial_optimum(&objective, bound_m)),
            stats: SolveStats::default(),
        }
    }

    pub fn with_capacity(objective: Objective, bound_m: f64, tol: Tolerance, m: usize) -> Self {
        let mut inc = Incremental::new(objective, bound_m, tol);
        inc.considered.reserve(m);
        inc
    }

    pub fn push(&mut self, h: HalfPlane) -> Step {
        let Some(current) = self.current else {
            return Step::Infeasible;
        };
        if satisfied(&h, current, &self.tol) {
            self.considered.push(h);
            return Step::Kept;
        }
        self.stats.violation_events += 1;
        self.stats.work_units += self.considered.len() as u64;
        let line = boundary_of(&h);
        self.current = solve_1d(&line, &self.considered, &self.objective, &self.tol);
        self.considered.push(h);
        match self.current {
            Some(_) => Step::Moved,
            None => Step::Infeasible,
        }
    }

    /// The intermediate optimum, or `None` once infeasible.
    pub fn optimum(&self) -> Option<Vec2> {
        self.current
    }

    pub fn considered(&self) -> &[HalfPlane] {
        &self.considered
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    pub fn solution(&self) -> Solution {
        match self.current {
            Some(p) => Solution::optimal(&self.objective, p),
            None => Solution::Infeasible,
        }
    }
}

pub fn solve(
    p: &Problem,
    perm: &Permutation,
    tol: &Tolerance,
) -> Result<(Solution, SolveStats), LpError> {
    check_permutation(p, perm)?;
    let mut inc = Incremental::with_capacity(*p.objective(), p.bound_m(), *tol, p.len());
    for &i in perm.as_slice() {
        if inc.push(p.constraints()[i]) == Step::Infeasible {
            break;
        }
    }
    Ok((inc.solution(), inc.stats()))
}

pub(crate) fn check_permutation(p: &Problem, perm: &Permutation) -> Result<(), LpError> {
    if perm.len() != p.len() {
        return Err(LpError::PermutationLength {
            expected: p.len(),
            got: perm.len(),
        });
    }
    Ok(())
}
