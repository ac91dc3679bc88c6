use std::fmt::Write;

use serde::Serialize;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::oracle::ModelSet;

/// `R1 × R2` over a partition. `R1` words only use `X1` bits, `R2` words
/// only `X2` bits, so `b1 ∪ b2` is `b1 | b2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rectangle {
    partition: Partition,
    r1: Vec<u64>,
    r2: Vec<u64>,
}

impl Rectangle {
    pub fn new(
        partition: Partition,
        r1: impl IntoIterator<Item = u64>,
        r2: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let side = |words: &mut Vec<u64>, mask: u64, name: &str| -> Result<()> {
            if let Some(w) = words.iter().find(|&&w| w & !mask != 0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} word {w:#x} assigns variables outside its block"
                )));
            }
            words.sort_unstable();
            words.dedup();
            Ok(())
        };
        let mut r1: Vec<u64> = r1.into_iter().collect();
        let mut r2: Vec<u64> = r2.into_iter().collect();
        side(&mut r1, partition.x1(), "R1")?;
        side(&mut r2, partition.x2(), "R2")?;
        Ok(Rectangle { partition, r1, r2 })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn r1(&self) -> &[u64] {
        &self.r1
    }

    pub fn r2(&self) -> &[u64] {
        &self.r2
    }

    /// `|R1| · |R2|`.
    pub fn size(&self) -> usize {
        self.r1.len() * self.r2.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.partition.is_balanced()
    }
}

/// `R1 × R2 = { b1 ∪ b2 }`.
pub fn rectangle_models(r: &Rectangle) -> ModelSet {
    let words = r.r1.iter().flat_map(|&a| r.r2.iter().map(move |&b| a | b));
    ModelSet::new(r.partition.var_count(), words).expect("rectangle words fit the partition")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RectangleCover {
    pub rectangles: Vec<Rectangle>,
}

impl RectangleCover {
    pub fn len(&self) -> usize {
        self.rectangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rectangles.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub valid: bool,
    /// Target models no rectangle contains.
    pub missing: Vec<u64>,
    /// Rectangle models outside the target.
    pub extra: Vec<u64>,
    pub balanced: Vec<bool>,
}

impl CoverReport {
    pub fn all_balanced(&self) -> bool {
        self.balanced.iter().all(|&b| b)
    }
}

pub fn validate_cover(cov: &RectangleCover, target: &ModelSet) -> Result<CoverReport> {
    for (k, r) in cov.rectangles.iter().enumerate() {
        if r.partition.var_count() != target.var_count() {
            return Err(Error::ScopeMismatch(format!(
                "rectangle {k} is over {} variables, target over {}",
                r.partition.var_count(),
                target.var_count()
            )));
        }
    }
    let union = ModelSet::new(
        target.var_count(),
        cov.rectangles
            .iter()
            .flat_map(|r| rectangle_models(r).words().to_vec()),
    )?;
    let missing = target.difference(&union);
    let extra = union.difference(target);
    Ok(CoverReport {
        valid: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
        balanced: cov.rectangles.iter().map(Rectangle::is_balanced).collect(),
    })
}

/// Text form of a cover: a header, then per rectangle a partition line
/// followed by its `R1` and `R2` words in hexadecimal.
pub fn write_cover(cov: &RectangleCover, var_count: usize) -> String {
    let width = var_count.div_ceil(4).max(1);
    let mut out = String::new();
    writeln!(out, "cover vars {} rectangles {}", var_count, cov.len()).unwrap();
    for r in &cov.rectangles {
        writeln!(
            out,
            "partition {:0width$x} r1 {} r2 {}",
            r.partition.x1(),
            r.r1.len(),
            r.r2.len()
        )
        .unwrap();
        for w in r.r1.iter().chain(&r.r2) {
            writeln!(out, "{w:0width$x}").unwrap();
        }
    }
    out
}

pub fn read_cover(text: &str) -> Result<(usize, RectangleCover)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let tok: Vec<&str> = header.split_whitespace().collect();
    let bad = |ln: usize| Error::parse(ln, "malformed cover header");
    if tok.len() != 5 || tok[0] != "cover" || tok[1] != "vars" || tok[3] != "rectangles" {
        return Err(bad(ln));
    }
    let var_count: usize = tok[2].parse().map_err(|_| bad(ln))?;
    let count: usize = tok[4].parse().map_err(|_| bad(ln))?;
    let hex = |ln: usize, s: &str| {
        u64::from_str_radix(s, 16).map_err(|_| Error::parse(ln, format!("bad hex word `{s}`")))
    };
    let mut cov = RectangleCover::default();
    for _ in 0..count {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(ln, "missing rectangle"))?;
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 6 || tok[0] != "partition" || tok[2] != "r1" || tok[4] != "r2" {
            return Err(Error::parse(ln, "expected `partition <x1> r1 <a> r2 <b>`"));
        }
        let partition = Partition::new(var_count, hex(ln, tok[1])?)
            .map_err(|e| Error::parse(ln, e.to_string()))?;
        let a: usize = tok[3]
            .parse()
            .map_err(|_| Error::parse(ln, "bad R1 count"))?;
        let b: usize = tok[5]
            .parse()
            .map_err(|_| Error::parse(ln, "bad R2 count"))?;
        let mut words = Vec::with_capacity(a + b);
        for _ in 0..a + b {
            let (wl, w) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, "missing words"))?;
            words.push(hex(wl, w)?);
        }
        let r2 = words.split_off(a);
        let r =
            Rectangle::new(partition, words, r2).map_err(|e| Error::parse(ln, e.to_string()))?;
        cov.rectangles.push(r);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing content"));
    }
    Ok((var_count, cov))
}
