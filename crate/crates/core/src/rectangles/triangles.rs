use std::collections::BTreeSet;

use serde::Serialize;

use super::coloring::{bichromatic_vertex_census, Color, EdgeColoring};
use crate::encodings::PairVarMap;
use crate::error::{Error, Result};
use crate::guard::SweepGuard;
use crate::oracle::{mod_lin, ModelSet};

/// A non-monochromatic triangle `{a, b, c}` labelled so that `{a, c}` is
/// the odd edge: it has colour `minority`, `{a, b}` and `{b, c}` the other
/// colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triangle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub minority: Color,
}

impl Triangle {
    /// Labels three distinct vertices, or `None` for a monochromatic
    /// triangle.
    pub fn classify(col: &EdgeColoring, x: usize, y: usize, z: usize) -> Option<Triangle> {
        let mut v = [x, y, z];
        v.sort_unstable();
        let [x, y, z] = v;
        let (xy, yz, xz) = (col.color(x, y), col.color(y, z), col.color(x, z));
        if xy == yz && yz == xz {
            return None;
        }
        // The odd edge is the one whose colour differs from the other two.
        let (a, b, c, odd) = if xy == yz {
            (x, y, z, xz)
        } else if xy == xz {
            (y, x, z, yz)
        } else {
            (x, z, y, xy)
        };
        Some(Triangle {
            a,
            b,
            c,
            minority: odd,
        })
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }
}

/// Greedy vertex-disjoint non-monochromatic triangles.
///
/// Bichromatic vertices are taken first, most balanced first; each is
/// closed with its smallest unused red and green neighbours. A final pass
/// over all remaining triples makes the selection maximal.
pub fn find_disjoint_minority_triangles(col: &EdgeColoring) -> Vec<Triangle> {
    let n = col.n();
    let census = bichromatic_vertex_census(col, 1);
    let mut order: Vec<_> = census
        .degrees
        .iter()
        .filter(|d| census.bichromatic.contains(&d.vertex))
        .collect();
    order.sort_by_key(|d| (std::cmp::Reverse(d.red.min(d.green)), d.vertex));

    let mut used = vec![false; n + 1];
    let mut out = Vec::new();
    for d in order {
        let v = d.vertex;
        if used[v] {
            continue;
        }
        let pick = |want: Color, used: &[bool]| {
            (1..=n).find(|&u| u != v && !used[u] && col.color(v, u) == want)
        };
        if let (Some(r), Some(g)) = (pick(Color::Red, &used), pick(Color::Green, &used)) {
            let t = Triangle::classify(col, v, r, g).expect("red and green edge at v");
            for x in t.vertices() {
                used[x] = true;
            }
            out.push(t);
        }
    }
    for x in 1..=n {
        for y in x + 1..=n {
            for z in y + 1..=n {
                if used[x] || used[y] || used[z] {
                    continue;
                }
                if let Some(t) = Triangle::classify(col, x, y, z) {
                    used[x] = true;
                    used[y] = true;
                    used[z] = true;
                    out.push(t);
                }
            }
        }
    }
    out
}

/// The six transitive orientations of a triangle as values of
/// `(x_{a,b}, x_{b,c}, x_{a,c})`, `BETA[s - 1]` being pattern `s`.
/// `(1,1,0)` and `(0,0,1)` are cycles and do not appear.
pub const BETA: [[bool; 3]; 6] = [
    [true, true, true],
    [true, false, true],
    [false, true, true],
    [false, true, false],
    [true, false, false],
    [false, false, false],
];

/// Pattern (1-based) excluded for a triangle once the odd edge's side has
/// fixed `x_{a,c}`: 6 if `x_{a,c} = 1`, else 1.
pub fn forbidden_pattern(x_ac: bool) -> usize {
    if x_ac {
        6
    } else {
        1
    }
}

/// Variable assignments realising pattern `s` (1-based) on `t`, resolving
/// `x_{j,i} = ¬x_{i,j}` through the pair map.
pub fn pattern_values(pairs: &PairVarMap, t: &Triangle, s: usize) -> [(u32, bool); 3] {
    let beta = BETA[s - 1];
    let edges = [(t.a, t.b), (t.b, t.c), (t.a, t.c)];
    let mut out = [(0, false); 3];
    for (k, &(u, v)) in edges.iter().enumerate() {
        let lit = pairs.literal(u, v);
        out[k] = (lit.var, beta[k] == lit.positive);
    }
    out
}

fn check_triangles(triangles: &[Triangle], n: usize) -> Result<()> {
    let mut seen = BTreeSet::new();
    for t in triangles {
        for v in t.vertices() {
            if v == 0 || v > n || !seen.insert(v) {
                return Err(Error::InvalidArgument(format!(
                    "triangles must be vertex-disjoint within 1..={n}; vertex {v} repeats or is out of range"
                )));
            }
        }
    }
    Ok(())
}

/// Members of `models` consistent with pattern `choice[j]` on triangle `j`
/// for every `j`.
pub fn block_models(
    models: &ModelSet,
    pairs: &PairVarMap,
    triangles: &[Triangle],
    choice: &[usize],
) -> Result<ModelSet> {
    check_triangles(triangles, pairs.n())?;
    if choice.len() != triangles.len() || choice.iter().any(|&s| !(1..=6).contains(&s)) {
        return Err(Error::InvalidArgument(format!(
            "need one pattern in 1..=6 per triangle, got {choice:?}"
        )));
    }
    let fixed: Vec<(u32, bool)> = triangles
        .iter()
        .zip(choice)
        .flat_map(|(t, &s)| pattern_values(pairs, t, s))
        .collect();
    let words = models
        .words()
        .iter()
        .copied()
        .filter(|w| fixed.iter().all(|&(v, b)| (w >> v & 1 == 1) == b));
    ModelSet::new(models.var_count(), words)
}

/// `|B_s|`: models of `lin_n` consistent with the chosen patterns, counted
/// by oracle sweep.
pub fn triangle_pattern_census(
    n: usize,
    triangles: &[Triangle],
    choice: &[usize],
    guard: SweepGuard,
) -> Result<u64> {
    let pairs = PairVarMap::unordered(n);
    check_triangles(triangles, n)?;
    let models = mod_lin(n, guard)?;
    Ok(block_models(&models, &pairs, triangles, choice)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monochromatic_has_no_triangles() {
        let col = EdgeColoring::from_mask(5, 0);
        assert!(find_disjoint_minority_triangles(&col).is_empty());
        let col = EdgeColoring::from_mask(5, (1 << 10) - 1);
        assert!(find_disjoint_minority_triangles(&col).is_empty());
    }

    #[test]
    fn one_red_edge() {
        let col = EdgeColoring::from_fn(3, |i, j| {
            if (i, j) == (1, 3) {
                Color::Red
            } else {
                Color::Green
            }
        });
        let ts = find_disjoint_minority_triangles(&col);
        assert_eq!(
            ts,
            vec![Triangle {
                a: 1,
                b: 2,
                c: 3,
                minority: Color::Red
            }]
        );

        let col = EdgeColoring::from_fn(3, |i, j| {
            if (i, j) == (1, 2) {
                Color::Red
            } else {
                Color::Green
            }
        });
        let t = find_disjoint_minority_triangles(&col)[0];
        assert_eq!(t.minority, Color::Red);
        assert_eq!(col.color(t.a, t.c), Color::Red);
        assert_eq!(col.color(t.a, t.b), Color::Green);
        assert_eq!(col.color(t.b, t.c), Color::Green);
        assert_eq!([t.a, t.c], [1, 2]);
    }

    #[test]
    fn beta_table_is_the_transitive_orientations() {
        let all: BTreeSet<[bool; 3]> = BETA.iter().copied().collect();
        assert_eq!(all.len(), 6);
        assert!(!all.contains(&[true, true, false]));
        assert!(!all.contains(&[false, false, true]));
        assert_eq!(BETA[forbidden_pattern(true) - 1], [false, false, false]);
        assert_eq!(BETA[forbidden_pattern(false) - 1], [true, true, true]);
    }

    #[test]
    fn single_triangle_blocks_for_n3() {
        let t = Triangle {
            a: 1,
            b: 2,
            c: 3,
            minority: Color::Red,
        };
        for s in 1..=6 {
            assert_eq!(
                triangle_pattern_census(3, &[t], &[s], SweepGuard::default()).unwrap(),
                1
            );
        }
    }

    #[test]
    fn reversed_labels_use_negated_variables() {
        let pairs = PairVarMap::unordered(3);
        let t = Triangle {
            a: 3,
            b: 2,
            c: 1,
            minority: Color::Green,
        };
        // β¹ = 3 ≺ 2 ≺ 1: every unordered variable is 0.
        let vals = pattern_values(&pairs, &t, 1);
        assert!(vals.iter().all(|&(_, b)| !b));
    }

    #[test]
    fn overlapping_triangles_are_rejected() {
        let t1 = Triangle {
            a: 1,
            b: 2,
            c: 3,
            minority: Color::Red,
        };
        let t2 = Triangle {
            a: 3,
            b: 4,
            c: 5,
            minority: Color::Red,
        };
        assert!(triangle_pattern_census(5, &[t1, t2], &[1, 1], SweepGuard::default()).is_err());
        assert!(triangle_pattern_census(5, &[t1], &[7], SweepGuard::default()).is_err());
    }
}
