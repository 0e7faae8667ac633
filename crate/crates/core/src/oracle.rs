//! Brute-force vertex enumeration. Cubic in the number of constraints; used
//! only as ground truth for the incremental and batch solvers.

use crate::error::LpError;
use crate::geometry::{objective_value, satisfied, HalfPlane, Tolerance, Vec2};
use crate::serial::{Problem, Solution};

/// Largest user-constraint count the oracle accepts.
pub const ORACLE_CAP: usize = 512;

/// Intersection of the two boundary lines, or `None` when they are parallel
/// to within `eps_parallel`.
pub fn vertex(h: &HalfPlane, g: &HalfPlane, tol: &Tolerance) -> Option<Vec2> {
    let (n1, n2) = (h.normal(), g.normal());
    let det = n1.cross(n2);
    if det.abs() <= tol.eps_parallel * n1.length() * n2.length() {
        return None;
    }
    let (b1, b2) = (h.bound(), g.bound());
    Some(Vec2::new(
        (b1 * n2.y - b2 * n1.y) / det,
        (n1.x * b2 - n2.x * b1) / det,
    ))
}

pub fn solve_bruteforce(p: &Problem, tol: &Tolerance) -> Result<Solution, LpError> {
    if p.len() > ORACLE_CAP {
        return Err(LpError::OracleCapExceeded {
            m: p.len(),
            cap: ORACLE_CAP,
        });
    }
    let all: Vec<HalfPlane> = p
        .box_constraints()
        .into_iter()
        .chain(p.constraints().iter().copied())
        .collect();
    let c = p.objective();

    let mut best: Option<(f64, Vec2)> = None;
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            let Some(v) = vertex(&all[i], &all[j], tol) else {
                continue;
            };
            if !all.iter().all(|h| satisfied(h, v, tol)) {
                continue;
            }
            let value = objective_value(c, v);
            let better = match best {
                None => true,
                Some((bv, bp)) => {
                    value > bv || (value == bv && (v.x, v.y) < (bp.x, bp.y))
                }
            };
            if better {
                best = Some((value, v));
            }
        }
    }
    Ok(match best {
        Some((value, point)) => Solution::Optimal { point, value },
        None => Solution::Infeasible,
    })
}
