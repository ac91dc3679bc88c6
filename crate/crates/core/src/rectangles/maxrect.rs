use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;

use super::partition::Partition;
use super::rectangle::Rectangle;
use crate::error::{Error, Result};
use crate::oracle::ModelSet;

pub const MAX_RECTANGLE_TARGET_LIMIT: usize = 10_000;

/// Largest rectangle `R1 × R2 ⊆ target` over `p`, by `|R1| · |R2|`.
///
/// Rows are the distinct projections of `target` on one block and columns
/// those on the other; a row and a column are adjacent when their union is
/// in `target`. Maximum-edge bicliques can be closed on the column side, so
/// it is enough to enumerate the intersections of row neighbourhoods
/// (the closed column sets) and pair each with every row containing it.
/// Ties go to the closed set found first.
pub fn max_rectangle(p: &Partition, target: &ModelSet) -> Result<Rectangle> {
    if p.var_count() != target.var_count() {
        return Err(Error::ScopeMismatch(format!(
            "partition over {} variables, target over {}",
            p.var_count(),
            target.var_count()
        )));
    }
    if target.len() > MAX_RECTANGLE_TARGET_LIMIT {
        return Err(Error::SizeGuard {
            what: "target model count",
            actual: target.len(),
            limit: MAX_RECTANGLE_TARGET_LIMIT,
        });
    }
    let project = |mask: u64| -> Vec<u64> {
        let set: std::collections::BTreeSet<u64> =
            target.words().iter().map(|w| w & mask).collect();
        set.into_iter().collect()
    };
    let (p1, p2) = (project(p.x1()), project(p.x2()));
    // Columns are the smaller side.
    let transposed = p2.len() > p1.len();
    let (rows, cols) = if transposed { (&p2, &p1) } else { (&p1, &p2) };
    let col_index: BTreeMap<u64, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();

    let mut adj = vec![FixedBitSet::with_capacity(cols.len()); rows.len()];
    let row_mask = if transposed { p.x2() } else { p.x1() };
    let row_index: BTreeMap<u64, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    for &w in target.words() {
        adj[row_index[&(w & row_mask)]].insert(col_index[&(w & !row_mask)]);
    }

    let mut closed: Vec<FixedBitSet> = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    for nr in &adj {
        let mut fresh = Vec::with_capacity(closed.len() + 1);
        fresh.push(nr.clone());
        for s in &closed {
            let mut t = s.clone();
            t.intersect_with(nr);
            fresh.push(t);
        }
        for t in fresh {
            if t.count_ones(..) > 0 && seen.insert(t.clone()) {
                closed.push(t);
            }
        }
    }

    let mut best: Option<(usize, Vec<usize>, &FixedBitSet)> = None;
    for c in &closed {
        let support: Vec<usize> = (0..rows.len()).filter(|&r| c.is_subset(&adj[r])).collect();
        let size = support.len() * c.count_ones(..);
        if best.as_ref().is_none_or(|(s, _, _)| size > *s) {
            best = Some((size, support, c));
        }
    }

    let (row_words, col_words): (Vec<u64>, Vec<u64>) = match best {
        Some((_, support, c)) => (
            support.iter().map(|&r| rows[r]).collect(),
            c.ones().map(|k| cols[k]).collect(),
        ),
        None => (Vec::new(), Vec::new()),
    };
    let rect = if transposed {
        Rectangle::new(*p, col_words, row_words)?
    } else {
        Rectangle::new(*p, row_words, col_words)?
    };
    debug_assert!(super::rectangle::rectangle_models(&rect).is_subset(target));
    Ok(rect)
}
