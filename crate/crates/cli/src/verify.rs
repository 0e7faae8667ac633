//! Cross-checks the oracle, serial, naive and balanced solvers on random
//! instances.

use std::fmt::{self, Write as _};

use anyhow::ensure;
use lp2d_core::format::write_problem;
use lp2d_core::gen::derive_seed;
use lp2d_core::geometry::satisfied;
use lp2d_core::{
    gen, shuffle, solve, solve_batch, solve_bruteforce, Batch, BlockConfig, GenKind, GenSpec,
    Problem, Scheduler, Solution, Tolerance, ORACLE_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sweep::PERM_SALT;

/// Instance counts at or below this print every instance in full.
pub const DETAIL_LIMIT: usize = 10;

#[derive(Debug, Clone)]
pub struct VerifyCase {
    pub index: usize,
    pub kind: GenKind,
    pub seed: u64,
    pub problem: Problem,
    pub oracle: Solution,
    pub serial: Solution,
    pub naive: Solution,
    pub balanced: Solution,
    pub issues: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub cases: Vec<VerifyCase>,
}

impl VerifyReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &VerifyCase> {
        self.cases.iter().filter(|c| !c.issues.is_empty())
    }

    pub fn passed(&self) -> bool {
        self.disagreements().next().is_none()
    }
}

fn kind_name(kind: GenKind) -> &'static str {
    match kind {
        GenKind::FeasibleRandom => "feasible",
        GenKind::Infeasible => "infeasible",
        GenKind::AdversarialOrdered => "adversarial",
    }
}

fn write_case(f: &mut String, c: &VerifyCase) {
    let _ = writeln!(
        f,
        "instance {} kind={} m={} seed={}",
        c.index,
        kind_name(c.kind),
        c.problem.len(),
        c.seed
    );
    f.push_str(&write_problem(&c.problem));
    for (name, s) in [
        ("oracle", &c.oracle),
        ("serial", &c.serial),
        ("naive", &c.naive),
        ("balanced", &c.balanced),
    ] {
        let _ = writeln!(f, "  {name:<8} {s}");
    }
    for issue in &c.issues {
        let _ = writeln!(f, "  DISAGREE {issue}");
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.cases.len() <= DETAIL_LIMIT {
            for c in &self.cases {
                write_case(&mut out, c);
            }
        } else {
            for c in self.disagreements() {
                write_case(&mut out, c);
            }
        }
        let infeasible = self.cases.iter().filter(|c| c.kind == GenKind::Infeasible).count();
        let _ = writeln!(
            out,
            "verified {} instances ({} feasible, {} infeasible): {} disagreements",
            self.cases.len(),
            self.cases.len() - infeasible,
            infeasible,
            self.disagreements().count()
        );
        f.write_str(&out)
    }
}

fn check(case: &mut VerifyCase, tol: &Tolerance) {
    let verdicts = [
        ("oracle", case.oracle),
        ("serial", case.serial),
        ("naive", case.naive),
        ("balanced", case.balanced),
    ];
    let expect_infeasible = case.kind == GenKind::Infeasible;
    for (name, s) in verdicts {
        if s.is_infeasible() != expect_infeasible {
            case.issues.push(format!("{name} verdict {s} contradicts the {} construction", kind_name(case.kind)));
        }
    }
    if case.naive != case.serial {
        case.issues.push("naive differs from serial".into());
    }
    if case.balanced != case.serial {
        case.issues.push("balanced differs from serial".into());
    }
    if let (Some(a), Some(b)) = (case.oracle.value(), case.serial.value()) {
        if !tol.agrees(a, b) {
            case.issues.push(format!(
                "oracle value {a:e} and serial value {b:e} differ at {} significant figures",
                tol.sig_figs
            ));
        }
    }
    if let Some(p) = case.serial.point() {
        let bad = case
            .problem
            .box_constraints()
            .iter()
            .chain(case.problem.constraints())
            .filter(|h| !satisfied(h, p, tol))
            .count();
        if bad > 0 {
            case.issues.push(format!("serial point violates {bad} constraints"));
        }
    }
}

/// Every fourth instance is infeasible (when `max_size >= 2`); sizes are
/// uniform in `1..=max_size`.
pub fn verify(
    count: usize,
    max_size: usize,
    seed: u64,
    block_width: usize,
    tol: &Tolerance,
) -> anyhow::Result<VerifyReport> {
    ensure!(count >= 1, "count must be at least 1");
    ensure!(
        (1..=ORACLE_CAP).contains(&max_size),
        "max size must be in 1..={ORACLE_CAP}"
    );
    let mut specs = Vec::with_capacity(count);
    for i in 0..count {
        let iseed = derive_seed(seed, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(iseed);
        let kind = if i % 4 == 3 && max_size >= 2 {
            GenKind::Infeasible
        } else {
            GenKind::FeasibleRandom
        };
        let lo = if kind == GenKind::Infeasible { 2 } else { 1 };
        let m = rng.gen_range(lo..=max_size);
        specs.push((kind, iseed, GenSpec::new(kind, m, iseed)));
    }
    let problems = specs
        .iter()
        .map(|(_, _, spec)| gen(spec))
        .collect::<Result<Vec<_>, _>>()?;
    let perms: Vec<_> = specs
        .iter()
        .zip(&problems)
        .map(|((_, iseed, _), p)| shuffle(p.len(), iseed ^ PERM_SALT))
        .collect();
    let batch = Batch::new(problems, perms)?;
    let (naive, _) = solve_batch(&batch, &BlockConfig::new(block_width, Scheduler::Naive), tol)?;
    let (balanced, _) =
        solve_batch(&batch, &BlockConfig::new(block_width, Scheduler::Balanced), tol)?;

    let mut cases = Vec::with_capacity(count);
    for (i, ((kind, iseed, _), (p, perm))) in specs
        .iter()
        .zip(batch.problems().iter().zip(batch.permutations()))
        .enumerate()
    {
        let (serial, _) = solve(p, perm, tol)?;
        let mut case = VerifyCase {
            index: i,
            kind: *kind,
            seed: *iseed,
            problem: p.clone(),
            oracle: solve_bruteforce(p, tol)?,
            serial,
            naive: naive[i],
            balanced: balanced[i],
            issues: Vec::new(),
        };
        check(&mut case, tol);
        cases.push(case);
    }
    Ok(VerifyReport { cases })
}
