//! Reduction-strategy microbenchmark over contention levels.

use std::time::Instant;

use anyhow::ensure;
use lp2d_core::reduce::{reduce_segments, Extremes, ReduceStrategy, MAX_CONTENTION};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::records::ContentionRecord;

pub const DEFAULT_ELEMENTS: usize = 1 << 20;

/// `1, 2, 4, ..., 512`.
pub fn contention_levels() -> Vec<usize> {
    (0..=MAX_CONTENTION.trailing_zeros()).map(|k| 1 << k).collect()
}

pub fn random_inputs(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-1e6..1e6)).collect()
}

pub fn slot_checksum(slots: &[Extremes]) -> f64 {
    slots.iter().map(|e| e.min + e.max).sum()
}

pub fn contention_bench(
    strategies: &[ReduceStrategy],
    contentions: &[usize],
    reps: usize,
    elements: usize,
    seed: u64,
) -> anyhow::Result<Vec<ContentionRecord>> {
    for &c in contentions {
        ensure!(
            c.is_power_of_two() && c <= MAX_CONTENTION,
            "contention must be a power of two no larger than {MAX_CONTENTION}, got {c}"
        );
    }
    ensure!(elements >= 1, "at least one element is required");
    let data = random_inputs(elements, seed);
    let mut out = Vec::new();
    for &c in contentions {
        for &s in strategies {
            for rep in 0..reps {
                let start = Instant::now();
                let slots = reduce_segments(s, &data, c)?;
                let wall_time_ns = (start.elapsed().as_nanos() as u64).max(1);
                out.push(ContentionRecord {
                    run_id: format!("{}-c{c}-r{rep}", s.name()),
                    strategy: s.name().to_string(),
                    contention: c,
                    rep,
                    elements,
                    wall_time_ns,
                    checksum: slot_checksum(&slots),
                });
            }
        }
    }
    Ok(out)
}
