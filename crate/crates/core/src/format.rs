//! The `lp2d v1` text format.
//!
//! ```text
//! lp2d v1 m=<m> M=<bound>
//! c <cx> <cy>
//! h <ax> <ay> <b>        (m lines)
//! ```
//!
//! Numbers are written in shortest round-trip scientific notation, so a
//! write/read cycle is lossless. Blank lines are ignored on input.

use std::fmt::Write as _;

use crate::error::LpError;
use crate::geometry::{HalfPlane, Objective, Vec2};
use crate::serial::Problem;

pub const MAGIC: &str = "lp2d";
pub const VERSION: &str = "v1";

pub fn write_problem(p: &Problem) -> String {
    let mut out = String::new();
    let c = p.objective().coefficients();
    let _ = writeln!(out, "{MAGIC} {VERSION} m={} M={:e}", p.len(), p.bound_m());
    let _ = writeln!(out, "c {:e} {:e}", c.x, c.y);
    for h in p.constraints() {
        let a = h.normal();
        let _ = writeln!(out, "h {:e} {:e} {:e}", a.x, a.y, h.bound());
    }
    out
}

pub fn read_problem(text: &str) -> Result<Problem, LpError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let (m, bound) = parse_header(ln, header)?;

    let (ln, cline) = lines.next().ok_or_else(|| err(ln + 1, "missing objective line"))?;
    let [cx, cy] = parse_record::<2>(ln, cline, "c")?;
    let objective = Objective::new(Vec2::new(cx, cy)).map_err(|e| err(ln, &e.to_string()))?;

    let mut constraints = Vec::with_capacity(m);
    let mut last = ln;
    for (ln, line) in lines.by_ref() {
        last = ln;
        if constraints.len() == m {
            return Err(err(ln, "more constraint lines than the header declares"));
        }
        let [ax, ay, b] = parse_record::<3>(ln, line, "h")?;
        constraints.push(HalfPlane::new(Vec2::new(ax, ay), b).map_err(|e| err(ln, &e.to_string()))?);
    }
    if constraints.len() != m {
        return Err(err(
            last,
            &format!("header declares m={m} but {} constraints follow", constraints.len()),
        ));
    }
    Problem::new(objective, constraints, bound).map_err(|e| err(1, &e.to_string()))
}

fn err(line: usize, msg: &str) -> LpError {
    LpError::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_header(ln: usize, header: &str) -> Result<(usize, f64), LpError> {
    let fields: Vec<&str> = header.split_whitespace().collect();
    match fields.as_slice() {
        [MAGIC, VERSION, m, bound] => {
            let m = m
                .strip_prefix("m=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(ln, "bad m= field"))?;
            let bound = bound
                .strip_prefix("M=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(ln, "bad M= field"))?;
            Ok((m, bound))
        }
        _ => Err(err(ln, "expected header `lp2d v1 m=<m> M=<bound>`")),
    }
}

fn parse_record<const N: usize>(ln: usize, line: &str, tag: &str) -> Result<[f64; N], LpError> {
    let mut fields = line.split_whitespace();
    if fields.next() != Some(tag) {
        return Err(err(ln, &format!("expected a `{tag}` line")));
    }
    let mut out = [0.0; N];
    for slot in out.iter_mut() {
        *slot = fields
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err(ln, "expected a number"))?;
    }
    if fields.next().is_some() {
        return Err(err(ln, "trailing fields"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen, GenSpec};
    use proptest::prelude::*;

    #[test]
    fn writes_the_documented_layout() {
        let p = Problem::new(
            Objective::new(Vec2::new(1.0, -0.5)).unwrap(),
            vec![HalfPlane::of(1.0, 0.0, 2.0), HalfPlane::of(0.25, 1.0, -3.0)],
            1e7,
        )
        .unwrap();
        assert_eq!(
            write_problem(&p),
            "lp2d v1 m=2 M=1e7\nc 1e0 -5e-1\nh 1e0 0e0 2e0\nh 2.5e-1 1e0 -3e0\n"
        );
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "",
            "lp2d v2 m=0 M=1e7\nc 1 0\n",
            "lp2d v1 m=1 M=1e7\nc 1 0\n",
            "lp2d v1 m=0 M=1e7\nc 1 0\nh 1 0 1\n",
            "lp2d v1 m=1 M=1e7\nc 0 0\nh 1 0 1\n",
            "lp2d v1 m=1 M=1e7\nc 1 0\nh 0 0 1\n",
            "lp2d v1 m=1 M=-1\nc 1 0\nh 1 0 1\n",
            "lp2d v1 m=1 M=1e7\nc 1 0\nh 1 0\n",
            "lp2d v1 m=1 M=1e7\nc 1 0\nh 1 0 1 4\n",
        ];
        for text in bad {
            assert!(read_problem(text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn accepts_plain_decimals_and_blank_lines() {
        let p = read_problem("lp2d v1 m=1 M=10\n\nc 1 1\nh 1.0 0.0 2.5\n\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.constraints()[0].bound(), 2.5);
        assert_eq!(p.bound_m(), 10.0);
    }

    proptest! {
        #[test]
        fn generated_problems_round_trip_bitwise(m in 1usize..64, seed: u64) {
            let p = gen(&GenSpec::feasible(m, seed)).unwrap();
            let back = read_problem(&write_problem(&p)).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
