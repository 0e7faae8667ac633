//! Segmented min/max reductions under varying contention.
//!
//! `contention` consecutive elements reduce into one slot. Three strategies
//! realize the same fold: every element hitting a shared atomic slot, a
//! pairwise tree per segment, and per-lane private accumulators merged at the
//! end. All of them order values with [`f64::total_cmp`], so their results are
//! bitwise identical.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::LpError;

/// Largest contention level exercised by the microbenchmark.
pub const MAX_CONTENTION: usize = 512;
/// Private accumulators per slot in [`ReduceStrategy::PerLanePrivateThenMerge`].
pub const PRIVATE_LANES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReduceStrategy {
    SerializedSharedUpdate,
    TreeReduction,
    PerLanePrivateThenMerge,
}

impl ReduceStrategy {
    pub const ALL: [ReduceStrategy; 3] = [
        ReduceStrategy::SerializedSharedUpdate,
        ReduceStrategy::TreeReduction,
        ReduceStrategy::PerLanePrivateThenMerge,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ReduceStrategy::SerializedSharedUpdate => "serialized-shared-update",
            ReduceStrategy::TreeReduction => "tree-reduction",
            ReduceStrategy::PerLanePrivateThenMerge => "per-lane-private-then-merge",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        ReduceStrategy::ALL.into_iter().find(|r| r.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremes {
    pub min: f64,
    pub max: f64,
}

impl Extremes {
    #[inline]
    fn of(v: f64) -> Self {
        Extremes { min: v, max: v }
    }

    #[inline]
    fn merge(self, other: Extremes) -> Self {
        Extremes {
            min: if other.min.total_cmp(&self.min).is_lt() { other.min } else { self.min },
            max: if other.max.total_cmp(&self.max).is_gt() { other.max } else { self.max },
        }
    }

    pub fn bitwise_eq(&self, other: &Extremes) -> bool {
        self.min.to_bits() == other.min.to_bits() && self.max.to_bits() == other.max.to_bits()
    }
}

/// Monotone map from `total_cmp` order to unsigned integer order.
#[inline]
fn order_key(v: f64) -> u64 {
    let bits = v.to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}

#[inline]
fn from_order_key(k: u64) -> f64 {
    if k >> 63 == 1 {
        f64::from_bits(k & !(1 << 63))
    } else {
        f64::from_bits(!k)
    }
}

/// Reduces each run of `contention` elements (the last run may be short).
pub fn reduce_segments(
    strategy: ReduceStrategy,
    data: &[f64],
    contention: usize,
) -> Result<Vec<Extremes>, LpError> {
    if contention == 0 {
        return Err(LpError::InvalidSpec("contention must be at least 1".into()));
    }
    Ok(match strategy {
        ReduceStrategy::SerializedSharedUpdate => serialized(data, contention),
        ReduceStrategy::TreeReduction => tree(data, contention),
        ReduceStrategy::PerLanePrivateThenMerge => private_then_merge(data, contention),
    })
}

fn serialized(data: &[f64], contention: usize) -> Vec<Extremes> {
    let slots = data.len().div_ceil(contention);
    let mins: Vec<AtomicU64> = (0..slots).map(|_| AtomicU64::new(u64::MAX)).collect();
    let maxs: Vec<AtomicU64> = (0..slots).map(|_| AtomicU64::new(0)).collect();
    for (i, &v) in data.iter().enumerate() {
        let k = order_key(v);
        let slot = i / contention;
        mins[slot].fetch_min(k, Ordering::Relaxed);
        maxs[slot].fetch_max(k, Ordering::Relaxed);
    }
    mins.iter()
        .zip(&maxs)
        .map(|(lo, hi)| Extremes {
            min: from_order_key(lo.load(Ordering::Relaxed)),
            max: from_order_key(hi.load(Ordering::Relaxed)),
        })
        .collect()
}

fn tree(data: &[f64], contention: usize) -> Vec<Extremes> {
    let mut scratch: Vec<Extremes> = Vec::with_capacity(contention);
    data.chunks(contention)
        .map(|seg| {
            scratch.clear();
            scratch.extend(seg.iter().map(|&v| Extremes::of(v)));
            let mut width = scratch.len();
            while width > 1 {
                let half = width.div_ceil(2);
                for i in 0..width / 2 {
                    scratch[i] = scratch[i].merge(scratch[i + half]);
                }
                width = half;
            }
            scratch[0]
        })
        .collect()
}

fn private_then_merge(data: &[f64], contention: usize) -> Vec<Extremes> {
    let lanes = contention.min(PRIVATE_LANES);
    let mut private: Vec<Option<Extremes>> = vec![None; lanes];
    data.chunks(contention)
        .map(|seg| {
            private.iter_mut().for_each(|p| *p = None);
            for (i, &v) in seg.iter().enumerate() {
                let p = &mut private[i % lanes];
                *p = Some(match *p {
                    Some(e) => e.merge(Extremes::of(v)),
                    None => Extremes::of(v),
                });
            }
            private
                .iter()
                .flatten()
                .copied()
                .reduce(Extremes::merge)
                .expect("segments are nonempty")
        })
        .collect()
}
