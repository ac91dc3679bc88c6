use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::maxrect::max_rectangle;
use super::partition::{balanced_partitions, Partition};
use crate::error::{Error, Result};
use crate::guard::SweepGuard;
use crate::oracle::mod_lin;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// Every balanced partition; allowed for `n ≤ 5`.
    Exhaustive,
    /// Distinct balanced partitions drawn from a seeded generator; allowed
    /// for `n ≤ 6`. The resulting bound is not certified.
    Sampled { seed: u64, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionBound {
    pub x1: u64,
    pub x1_len: usize,
    pub x2_len: usize,
    pub r1: usize,
    pub r2: usize,
    pub max_rectangle: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub var_count: usize,
    pub models: u64,
    pub sampled: bool,
    pub seed: Option<u64>,
    pub partitions: usize,
    /// Largest balanced rectangle inside `Mod(lin_n)` over the partitions
    /// examined.
    pub r_max: usize,
    pub argmax_x1: u64,
    /// `⌈n! / r_max⌉`: every balanced rectangle cover of `lin_n` has at
    /// least this many rectangles when `certified`.
    pub bound: u64,
    pub certified: bool,
    pub rows: Vec<PartitionBound>,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn sample_partitions(m: usize, seed: u64, samples: usize) -> Vec<Partition> {
    let lo = m.div_ceil(3);
    let hi = m - lo;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = BTreeSet::new();
    let mut attempts = 0;
    while picked.len() < samples && attempts < samples.saturating_mul(100) {
        attempts += 1;
        let size = rng.gen_range(lo..=hi);
        let mut x1 = sample(&mut rng, m, size)
            .iter()
            .fold(0u64, |acc, v| acc | 1 << v);
        if x1 & 1 == 0 {
            x1 = ((1u64 << m) - 1) & !x1;
        }
        picked.insert(x1);
    }
    picked
        .into_iter()
        .map(|x1| Partition::new(m, x1).expect("mask fits"))
        .collect()
}

/// The cover-size lower bound for `lin_n` obtained from the largest
/// balanced rectangle inside `Mod(lin_n)`.
pub fn lower_bound_from_covers(
    n: usize,
    mode: BoundMode,
    guard: SweepGuard,
) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "lin_{n} has fewer than 3 variables and no balanced partition"
        )));
    }
    let m = n * (n - 1) / 2;
    let (partitions, sampled, seed) = match mode {
        BoundMode::Exhaustive if n <= 5 => {
            (balanced_partitions(m).collect::<Vec<_>>(), false, None)
        }
        BoundMode::Exhaustive => {
            return Err(Error::InvalidArgument(format!(
                "exhaustive search is limited to n ≤ 5; use sampling for n = {n}"
            )))
        }
        BoundMode::Sampled { seed, samples } if n <= 6 => {
            (sample_partitions(m, seed, samples), true, Some(seed))
        }
        BoundMode::Sampled { .. } => {
            return Err(Error::InvalidArgument(format!(
                "sampling is limited to n ≤ 6, got {n}"
            )))
        }
    };
    let target = mod_lin(n, guard)?;
    let rows = partitions
        .par_iter()
        .map(|p| {
            let r = max_rectangle(p, &target)?;
            Ok(PartitionBound {
                x1: p.x1(),
                x1_len: p.x1_len(),
                x2_len: p.x2_len(),
                r1: r.r1().len(),
                r2: r.r2().len(),
                max_rectangle: r.size(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let best = rows
        .iter()
        .max_by_key(|r| (r.max_rectangle, std::cmp::Reverse(r.x1)))
        .ok_or_else(|| Error::InvalidArgument("no partition examined".into()))?;
    let (r_max, argmax_x1) = (best.max_rectangle, best.x1);
    let models = factorial(n);
    Ok(BoundReport {
        n,
        var_count: m,
        models,
        sampled,
        seed,
        partitions: rows.len(),
        r_max,
        argmax_x1,
        bound: models.div_ceil(r_max as u64),
        certified: !sampled,
        rows,
    })
}
