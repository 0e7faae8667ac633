//! Seeded problem generators and batch replication.
//!
//! Every instance is built around a hidden interior point drawn uniformly from
//! the central half of `[-GEN_SPAN, GEN_SPAN]^2`. Constraint normals are
//! uniform on the unit circle and each offset leaves the hidden point at least
//! `interior_margin` inside.

use std::f64::consts::{FRAC_PI_3, TAU};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::batch::Batch;
use crate::error::LpError;
use crate::geometry::{satisfied, HalfPlane, Objective, Tolerance, Vec2};
use crate::serial::{shuffle, Incremental, Problem, Step, DEFAULT_BOUND};

/// Half-width of the region the hidden point and constraints live in.
pub const GEN_SPAN: f64 = 100.0;
pub const DEFAULT_MARGIN: f64 = 1.0;
/// Largest adversarial instance the generator will attempt.
pub const ADVERSARIAL_CAP: usize = 8192;

const ADVERSARIAL_RETRIES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    FeasibleRandom,
    Infeasible,
    /// Ordered so that every constraint excludes the previous optimum.
    AdversarialOrdered,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub m: usize,
    pub seed: u64,
    pub kind: GenKind,
    pub interior_margin: f64,
    pub bound_m: f64,
}

impl GenSpec {
    pub fn new(kind: GenKind, m: usize, seed: u64) -> Self {
        GenSpec {
            m,
            seed,
            kind,
            interior_margin: DEFAULT_MARGIN,
            bound_m: DEFAULT_BOUND,
        }
    }

    pub fn feasible(m: usize, seed: u64) -> Self {
        GenSpec::new(GenKind::FeasibleRandom, m, seed)
    }

    pub fn infeasible(m: usize, seed: u64) -> Self {
        GenSpec::new(GenKind::Infeasible, m, seed)
    }

    pub fn adversarial(m: usize, seed: u64) -> Self {
        GenSpec::new(GenKind::AdversarialOrdered, m, seed)
    }

    fn validate(&self) -> Result<(), LpError> {
        let invalid = |msg: &str| Err(LpError::InvalidSpec(msg.to_string()));
        if self.m == 0 {
            return invalid("m must be at least 1");
        }
        if !(self.interior_margin > 0.0 && self.interior_margin.is_finite()) {
            return invalid("interior_margin must be positive");
        }
        if !(self.bound_m > 2.0 * GEN_SPAN && self.bound_m.is_finite()) {
            return invalid("bound_m must exceed twice the generation span");
        }
        match self.kind {
            GenKind::Infeasible if self.m < 2 => invalid("infeasible instances need m >= 2"),
            GenKind::AdversarialOrdered if self.m > ADVERSARIAL_CAP => Err(LpError::InvalidSpec(
                format!("adversarial instances are capped at m = {ADVERSARIAL_CAP}"),
            )),
            _ => Ok(()),
        }
    }
}

/// A generated problem together with the point it was built around, when one
/// exists.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub problem: Problem,
    pub witness: Option<Vec2>,
}

pub fn gen(spec: &GenSpec) -> Result<Problem, LpError> {
    gen_with_witness(spec).map(|g| g.problem)
}

pub fn gen_with_witness(spec: &GenSpec) -> Result<Generated, LpError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let objective = unit_objective(&mut rng);
    let interior = Vec2::new(
        rng.gen_range(-GEN_SPAN / 2.0..GEN_SPAN / 2.0),
        rng.gen_range(-GEN_SPAN / 2.0..GEN_SPAN / 2.0),
    );
    match spec.kind {
        GenKind::FeasibleRandom => {
            let hs = (0..spec.m)
                .map(|_| random_constraint(&mut rng, interior, spec.interior_margin))
                .collect();
            Ok(Generated {
                problem: Problem::new(objective, hs, spec.bound_m)?,
                witness: Some(interior),
            })
        }
        GenKind::Infeasible => {
            let mut hs: Vec<HalfPlane> = (0..spec.m - 1)
                .map(|_| random_constraint(&mut rng, interior, spec.interior_margin))
                .collect();
            let pivot = hs[rng.gen_range(0..hs.len())];
            let blocker = pivot.opposite(spec.interior_margin)?;
            let at = rng.gen_range(0..=hs.len());
            hs.insert(at, blocker);
            Ok(Generated {
                problem: Problem::new(objective, hs, spec.bound_m)?,
                witness: None,
            })
        }
        GenKind::AdversarialOrdered => {
            let hs = adversarial_constraints(&mut rng, spec, objective, interior)?;
            Ok(Generated {
                problem: Problem::new(objective, hs, spec.bound_m)?,
                witness: Some(interior),
            })
        }
    }
}

fn unit_objective(rng: &mut ChaCha8Rng) -> Objective {
    let th = rng.gen_range(0.0..TAU);
    Objective::new(Vec2::new(th.cos(), th.sin())).expect("unit vector is nonzero")
}

fn random_constraint(rng: &mut ChaCha8Rng, interior: Vec2, margin: f64) -> HalfPlane {
    let th = rng.gen_range(0.0..TAU);
    let a = Vec2::new(th.cos(), th.sin());
    let slack = rng.gen_range(margin..10.0 * margin);
    HalfPlane::new(a, a.dot(interior) + slack).expect("unit normal")
}

/// Builds constraints one at a time, each cutting the running optimum by a
/// fraction `1 / (remaining + 1)` of its distance to the margin around the
/// hidden point. The running optimum is maintained with the same incremental
/// solver the reference path uses, so each constraint is checked to be a
/// violation event in identity order.
fn adversarial_constraints(
    rng: &mut ChaCha8Rng,
    spec: &GenSpec,
    objective: Objective,
    interior: Vec2,
) -> Result<Vec<HalfPlane>, LpError> {
    let tol = Tolerance::default();
    let up = objective.coefficients();
    let mut inc = Incremental::with_capacity(objective, spec.bound_m, tol, spec.m);
    let mut hs = Vec::with_capacity(spec.m);
    for k in 0..spec.m {
        let current = inc.optimum().ok_or(LpError::ConstructionFailed(k))?;
        let remaining = (spec.m - k) as f64;
        let candidate = (0..ADVERSARIAL_RETRIES).find_map(|_| {
            let th = rng.gen_range(-FRAC_PI_3..FRAC_PI_3);
            let (s, c) = th.sin_cos();
            let n = Vec2::new(up.x * c - up.y * s, up.x * s + up.y * c);
            let reach = n.dot(current);
            let gap = reach - n.dot(interior) - spec.interior_margin;
            let cut = gap / (remaining + 1.0);
            if !(cut > 1e-6 * (1.0 + reach.abs())) {
                return None;
            }
            let h = HalfPlane::new(n, reach - cut).ok()?;
            (!satisfied(&h, current, &tol)).then_some(h)
        });
        let h = candidate.ok_or(LpError::ConstructionFailed(k))?;
        if inc.push(h) != Step::Moved {
            return Err(LpError::ConstructionFailed(k));
        }
        hs.push(h);
    }
    Ok(hs)
}

/// SplitMix64 finalizer over `(seed, stream)`; used to derive independent
/// per-item seeds from one user seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `count` copies of `p`, each with its own permutation seeded from
/// `perm_seed`.
pub fn replicate(p: &Problem, count: usize, perm_seed: u64) -> Result<Batch, LpError> {
    let problems = vec![p.clone(); count];
    let perms = (0..count as u64)
        .map(|i| shuffle(p.len(), derive_seed(perm_seed, i)))
        .collect();
    Batch::new(problems, perms)
}
