use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::coloring::{coloring_from_partition, Color, EdgeColoring};
use super::maxrect::max_rectangle;
use super::partition::balanced_partitions;
use super::triangles::{block_models, find_disjoint_minority_triangles, Triangle};
use crate::encodings::PairVarMap;
use crate::error::{Error, Result};
use crate::guard::SweepGuard;
use crate::oracle::mod_lin;

/// Minimum size of each colour class for a colouring to count as balanced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BalanceFloor {
    /// `⌈|E| / 3⌉` edges of each colour.
    #[default]
    ThirdOfEdges,
    /// `⌈n / 3⌉` edges of each colour.
    ThirdOfVertices,
}

impl BalanceFloor {
    pub fn value(self, n: usize) -> usize {
        match self {
            BalanceFloor::ThirdOfEdges => (n * n.saturating_sub(1) / 2).div_ceil(3),
            BalanceFloor::ThirdOfVertices => n.div_ceil(3),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColoringRow {
    pub red_mask: u64,
    pub red: usize,
    pub green: usize,
    /// Largest `t` with at least `t` vertices having `t` edges of each colour.
    pub h: usize,
    /// Vertices with at least one edge of each colour.
    pub bichromatic: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThresholdRow {
    pub threshold: usize,
    /// Fewest vertices with `threshold` edges of each colour over the
    /// admissible colourings.
    pub min_vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub n: usize,
    pub edges: usize,
    pub floor: BalanceFloor,
    pub floor_value: usize,
    pub colorings: u64,
    pub admissible: u64,
    pub admissible_third_of_edges: u64,
    pub admissible_third_of_vertices: u64,
    pub min_h: usize,
    pub max_h: usize,
    /// `min_h / n`.
    pub empirical_constant: f64,
    /// `(h, number of admissible colourings)` for every `h` that occurs.
    pub histogram: Vec<(usize, u64)>,
    /// Admissible colourings in which no vertex sees both colours.
    pub without_bichromatic: u64,
    pub threshold_scan: Vec<ThresholdRow>,
    /// `⌊n / 100⌋` vertices with `⌊n / 100⌋` edges of each colour.
    pub claimed_floor: usize,
    pub note: String,
    pub rows: Vec<ColoringRow>,
}

fn h_index(deg: &[(usize, usize)]) -> usize {
    let n = deg.len() - 1;
    (1..=n)
        .take_while(|&t| deg[1..].iter().filter(|d| d.0 >= t && d.1 >= t).count() >= t)
        .last()
        .unwrap_or(0)
}

#[derive(Clone)]
struct Acc {
    admissible: u64,
    by_edges: u64,
    by_vertices: u64,
    without: u64,
    hist: Vec<u64>,
    scan: Vec<usize>,
}

impl Acc {
    fn new(n: usize) -> Self {
        Acc {
            admissible: 0,
            by_edges: 0,
            by_vertices: 0,
            without: 0,
            hist: vec![0; n + 1],
            scan: vec![usize::MAX; n],
        }
    }

    fn merge(mut self, o: Acc) -> Acc {
        self.admissible += o.admissible;
        self.by_edges += o.by_edges;
        self.by_vertices += o.by_vertices;
        self.without += o.without;
        for (a, b) in self.hist.iter_mut().zip(o.hist) {
            *a += b;
        }
        for (a, b) in self.scan.iter_mut().zip(o.scan) {
            *a = (*a).min(b);
        }
        self
    }
}

/// Exhaustive census of bichromatic vertices over every balanced red/green
/// colouring of `K_n`.
pub fn lemma1_experiment(
    n: usize,
    floor: BalanceFloor,
    guard: SweepGuard,
    keep_rows: bool,
) -> Result<Lemma1Report> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("K_{n} has no edges")));
    }
    let m = n * (n - 1) / 2;
    guard.check(m)?;
    let floor_value = floor.value(n);
    let (edge_floor, vertex_floor) = (
        BalanceFloor::ThirdOfEdges.value(n),
        BalanceFloor::ThirdOfVertices.value(n),
    );
    let row = |mask: u64| -> Option<ColoringRow> {
        let red = mask.count_ones() as usize;
        let green = m - red;
        if red < floor_value || green < floor_value {
            return None;
        }
        let deg = EdgeColoring::from_mask(n, mask).degrees();
        let bichromatic = deg[1..].iter().filter(|d| d.0 >= 1 && d.1 >= 1).count();
        Some(ColoringRow {
            red_mask: mask,
            red,
            green,
            h: h_index(&deg),
            bichromatic,
        })
    };

    let acc = (0..1u64 << m)
        .into_par_iter()
        .fold(
            || Acc::new(n),
            |mut acc, mask| {
                let red = mask.count_ones() as usize;
                let green = m - red;
                acc.by_edges += u64::from(red.min(green) >= edge_floor);
                acc.by_vertices += u64::from(red.min(green) >= vertex_floor);
                if red.min(green) < floor_value {
                    return acc;
                }
                let deg = EdgeColoring::from_mask(n, mask).degrees();
                acc.admissible += 1;
                acc.hist[h_index(&deg)] += 1;
                for t in 1..n {
                    let c = deg[1..].iter().filter(|d| d.0 >= t && d.1 >= t).count();
                    acc.scan[t - 1] = acc.scan[t - 1].min(c);
                    if t == 1 && c == 0 {
                        acc.without += 1;
                    }
                }
                acc
            },
        )
        .reduce(|| Acc::new(n), Acc::merge);

    let histogram: Vec<(usize, u64)> = acc
        .hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(h, &c)| (h, c))
        .collect();
    let min_h = histogram.first().map_or(0, |r| r.0);
    let max_h = histogram.last().map_or(0, |r| r.0);
    let threshold_scan = acc
        .scan
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != usize::MAX)
        .map(|(t, &c)| ThresholdRow {
            threshold: t + 1,
            min_vertices: c,
        })
        .collect();
    let claimed_floor = n / 100;
    let note = if claimed_floor == 0 {
        format!(
            "floor(n/100) = 0 for n = {n}, so the claimed count is vacuous; reading it as a \
             ceiling asks for at least one bichromatic vertex, which holds iff \
             without_bichromatic = 0"
        )
    } else {
        format!("claimed count floor(n/100) = {claimed_floor}; compare with min_h")
    };
    let rows = if keep_rows {
        (0..1u64 << m).into_par_iter().filter_map(row).collect()
    } else {
        Vec::new()
    };
    Ok(Lemma1Report {
        n,
        edges: m,
        floor,
        floor_value,
        colorings: 1 << m,
        admissible: acc.admissible,
        admissible_third_of_edges: acc.by_edges,
        admissible_third_of_vertices: acc.by_vertices,
        min_h,
        max_h,
        empirical_constant: min_h as f64 / n as f64,
        histogram,
        without_bichromatic: acc.without,
        threshold_scan,
        claimed_floor,
        note,
        rows,
    })
}

/// Denominator of the constant `c = 1/5200` in the nominal size bound
/// `n! / 2^{c n}`.
pub const LEMMA2_CONSTANT_DENOMINATOR: u32 = 5200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2Row {
    pub x1: u64,
    pub x1_len: usize,
    pub red_minority: usize,
    pub green_minority: usize,
    /// Minority colour of the triangles kept.
    pub minority: Color,
    pub k: usize,
    pub triangles: Vec<Triangle>,
    pub blocks: u64,
    /// Block size when all blocks agree, else `None`.
    pub block_size: Option<u64>,
    pub blocks_disjoint: bool,
    pub block_sum: u64,
    pub max_rectangle: usize,
    /// `max_rectangle · 6^k ≤ n! · 5^k`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma2Report {
    pub n: usize,
    pub var_count: usize,
    pub models: u64,
    pub constant_denominator: u32,
    /// `n! / 2^{n/5200}`.
    pub nominal_bound: f64,
    pub partitions: usize,
    pub min_k: usize,
    pub max_k: usize,
    pub all_hold: bool,
    pub rows: Vec<Lemma2Row>,
}

fn odometer(k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = 6usize.pow(k as u32);
    (0..total).map(move |mut code| {
        (0..k)
            .map(|_| {
                let s = code % 6 + 1;
                code /= 6;
                s
            })
            .collect()
    })
}

/// For every balanced partition of the pair variables of `lin_n`, picks
/// disjoint non-monochromatic triangles of the induced colouring, checks
/// that the `6^k` pattern blocks split `Mod(lin_n)` evenly and that the
/// largest rectangle obeys `r · 6^k ≤ n! · 5^k`.
pub fn lemma2_experiment(n: usize, guard: SweepGuard) -> Result<Lemma2Report> {
    if !(3..=5).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "triangle block census needs 3 ≤ n ≤ 5, got {n}"
        )));
    }
    let m = n * (n - 1) / 2;
    let pairs = PairVarMap::unordered(n);
    let models = mod_lin(n, guard)?;
    let total = models.len() as u64;
    let parts: Vec<_> = balanced_partitions(m).collect();
    let rows = parts
        .par_iter()
        .map(|p| -> Result<Lemma2Row> {
            let col = coloring_from_partition(p, &pairs)?;
            let all = find_disjoint_minority_triangles(&col);
            let red = all.iter().filter(|t| t.minority == Color::Red).count();
            let green = all.len() - red;
            let minority = if red >= green {
                Color::Red
            } else {
                Color::Green
            };
            let triangles: Vec<Triangle> =
                all.into_iter().filter(|t| t.minority == minority).collect();
            let k = triangles.len();

            let mut sizes = BTreeSet::new();
            let mut sum = 0u64;
            let mut union = BTreeSet::new();
            for choice in odometer(k) {
                let block = block_models(&models, &pairs, &triangles, &choice)?;
                sizes.insert(block.len() as u64);
                sum += block.len() as u64;
                union.extend(block.words().iter().copied());
            }
            let r = max_rectangle(p, &models)?.size() as u128;
            let holds = r * 6u128.pow(k as u32) <= total as u128 * 5u128.pow(k as u32);
            Ok(Lemma2Row {
                x1: p.x1(),
                x1_len: p.x1_len(),
                red_minority: red,
                green_minority: green,
                minority,
                k,
                triangles,
                blocks: 6u64.pow(k as u32),
                block_size: (sizes.len() == 1).then(|| *sizes.first().unwrap()),
                blocks_disjoint: union.len() as u64 == sum,
                block_sum: sum,
                max_rectangle: r as usize,
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let c = 1.0 / f64::from(LEMMA2_CONSTANT_DENOMINATOR);
    Ok(Lemma2Report {
        n,
        var_count: m,
        models: total,
        constant_denominator: LEMMA2_CONSTANT_DENOMINATOR,
        nominal_bound: total as f64 / (c * n as f64).exp2(),
        partitions: rows.len(),
        min_k: rows.iter().map(|r| r.k).min().unwrap_or(0),
        max_k: rows.iter().map(|r| r.k).max().unwrap_or(0),
        all_hold: rows.iter().all(|r| r.holds),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_index_examples() {
        assert_eq!(h_index(&[(0, 0), (0, 2), (2, 0), (1, 1)]), 1);
        assert_eq!(h_index(&[(0, 0), (0, 2), (2, 0), (0, 2)]), 0);
        assert_eq!(
            h_index(&[(0, 0), (2, 2), (2, 2), (1, 3), (3, 1), (2, 2)]),
            2
        );
    }

    #[test]
    fn odometer_enumerates_choices() {
        assert_eq!(odometer(0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        let two: Vec<_> = odometer(2).collect();
        assert_eq!(two.len(), 36);
        assert_eq!(two[0], vec![1, 1]);
        assert_eq!(two[35], vec![6, 6]);
    }

    #[test]
    fn lemma1_k4() {
        let r =
            lemma1_experiment(4, BalanceFloor::ThirdOfEdges, SweepGuard::default(), true).unwrap();
        assert_eq!(r.colorings, 64);
        // 2 red edges or more and 2 green or more: 64 - 2 * (1 + 6) = 50.
        assert_eq!(r.admissible, 50);
        assert_eq!(r.rows.len(), 50);
        assert_eq!(r.without_bichromatic, 0);
        assert_eq!(r.histogram.iter().map(|h| h.1).sum::<u64>(), 50);
    }

    #[test]
    fn lemma2_n4() {
        let r = lemma2_experiment(4, SweepGuard::default()).unwrap();
        assert!(r.all_hold);
        assert!(r
            .rows
            .iter()
            .all(|row| row.blocks_disjoint && row.block_sum == 24));
    }
}
