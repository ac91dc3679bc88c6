use serde::Serialize;

use super::partition::Partition;
use crate::encodings::{PairMode, PairVarMap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Green,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Green,
            Color::Green => Color::Red,
        }
    }
}

/// A red/green colouring of the edges of `K_n`, indexed like the unordered
/// pair variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    red: Vec<bool>,
}

impl EdgeColoring {
    /// Colouring with bit `v` of `red_mask` marking edge `v` red.
    pub fn from_mask(n: usize, red_mask: u64) -> Self {
        let m = n * n.saturating_sub(1) / 2;
        assert!(m <= 64, "K_{n} has more than 64 edges");
        EdgeColoring {
            n,
            red: (0..m).map(|v| red_mask >> v & 1 == 1).collect(),
        }
    }

    pub fn from_fn(n: usize, mut color: impl FnMut(usize, usize) -> Color) -> Self {
        let pairs = PairVarMap::unordered(n);
        let red = pairs
            .pairs()
            .iter()
            .map(|&(i, j)| color(i, j) == Color::Red)
            .collect();
        EdgeColoring { n, red }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.red.len()
    }

    pub fn color(&self, i: usize, j: usize) -> Color {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let v = (i - 1) * (2 * self.n - i) / 2 + (j - i - 1);
        if self.red[v] {
            Color::Red
        } else {
            Color::Green
        }
    }

    pub fn red_count(&self) -> usize {
        self.red.iter().filter(|&&r| r).count()
    }

    pub fn green_count(&self) -> usize {
        self.edge_count() - self.red_count()
    }

    /// `(red, green)` incident edge counts, indexed by vertex; index 0 unused.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.n + 1];
        let pairs = PairVarMap::unordered(self.n);
        for (v, &(i, j)) in pairs.pairs().iter().enumerate() {
            for x in [i, j] {
                if self.red[v] {
                    deg[x].0 += 1;
                } else {
                    deg[x].1 += 1;
                }
            }
        }
        deg
    }
}

/// Edge `{i, j}` is red iff `x_{i,j} ∈ X1`.
pub fn coloring_from_partition(p: &Partition, pairs: &PairVarMap) -> Result<EdgeColoring> {
    if pairs.mode() != PairMode::Unordered || pairs.len() != p.var_count() {
        return Err(Error::ScopeMismatch(format!(
            "partition over {} variables needs the unordered pair map of the same size",
            p.var_count()
        )));
    }
    Ok(EdgeColoring::from_mask(pairs.n(), p.x1()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexDegree {
    pub vertex: usize,
    pub red: usize,
    pub green: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCensus {
    pub threshold: usize,
    pub degrees: Vec<VertexDegree>,
    /// Vertices with at least `threshold` edges of each colour, ascending.
    pub bichromatic: Vec<usize>,
}

pub fn bichromatic_vertex_census(col: &EdgeColoring, threshold: usize) -> VertexCensus {
    let deg = col.degrees();
    let degrees: Vec<VertexDegree> = (1..=col.n())
        .map(|v| VertexDegree {
            vertex: v,
            red: deg[v].0,
            green: deg[v].1,
        })
        .collect();
    let bichromatic = degrees
        .iter()
        .filter(|d| d.red >= threshold && d.green >= threshold)
        .map(|d| d.vertex)
        .collect();
    VertexCensus {
        threshold,
        degrees,
        bichromatic,
    }
}
