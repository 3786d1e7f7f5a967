//! Plain-text point set files.
//!
//! ```text
//! # comment
//! dim 4
//! 0 0 0 5
//! 0 0 1 4
//! mark 1 2
//! ```
//!
//! The header fixes the ambient dimension. Each following line is a point or
//! a `mark` line listing the 1-based indices, in file order, of the points of
//! a marked facet. Blank lines and text after `#` are ignored.

use crate::config::PointConfig;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::predicates::MarkedPolytope;

pub const MAX_DIM: usize = 16;
pub const MAX_POINTS: usize = 1024;
pub const MAX_COORD: i64 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub dim: usize,
    /// Points in file order.
    pub points: Vec<LatticePoint>,
    /// Marked facets as 0-based indices into `points`.
    pub marks: Vec<Vec<usize>>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<PointSet> {
    let mut dim = None;
    let mut points = Vec::new();
    let mut marks = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let first = words.next().expect("nonempty line");
        match (first, dim) {
            ("dim", None) => {
                let n: usize = words
                    .next()
                    .ok_or_else(|| err(line, "missing dimension"))?
                    .parse()
                    .map_err(|_| err(line, "dimension is not a number"))?;
                if words.next().is_some() {
                    return Err(err(line, "trailing text after dimension"));
                }
                if n == 0 || n > MAX_DIM {
                    return Err(err(line, format!("dimension must be in 1..={MAX_DIM}")));
                }
                dim = Some(n);
            }
            ("dim", Some(_)) => return Err(err(line, "repeated header")),
            (_, None) => return Err(err(line, "expected header `dim <n>`")),
            ("mark", Some(_)) => {
                let mut idx = Vec::new();
                for w in words {
                    let i: usize = w.parse().map_err(|_| err(line, format!("bad index `{w}`")))?;
                    if i == 0 || i > points.len() {
                        return Err(err(line, format!("index {i} does not name an earlier point")));
                    }
                    idx.push(i - 1);
                }
                if idx.is_empty() {
                    return Err(err(line, "empty mark"));
                }
                marks.push(idx);
            }
            (_, Some(n)) => {
                let coords = body
                    .split_whitespace()
                    .map(|w| {
                        let x: i64 = w.parse().map_err(|_| err(line, format!("bad coordinate `{w}`")))?;
                        if !(0..=MAX_COORD).contains(&x) {
                            return Err(err(line, format!("coordinate {x} outside 0..={MAX_COORD}")));
                        }
                        Ok(x)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if coords.len() != n {
                    return Err(err(line, format!("expected {n} coordinates, found {}", coords.len())));
                }
                if points.len() == MAX_POINTS {
                    return Err(err(line, format!("more than {MAX_POINTS} points")));
                }
                points.push(LatticePoint::new(coords)?);
            }
        }
    }
    let dim = dim.ok_or_else(|| err(0, "missing header `dim <n>`"))?;
    if points.is_empty() {
        return Err(err(0, "no points"));
    }
    Ok(PointSet { dim, points, marks })
}

impl PointSet {
    pub fn config(&self) -> Result<PointConfig> {
        PointConfig::new(self.dim, self.points.clone())
    }

    pub fn mark_members(&self) -> Vec<Vec<LatticePoint>> {
        self.marks.iter().map(|m| m.iter().map(|&i| self.points[i].clone()).collect()).collect()
    }

    /// The marked polytope; every mark must be exactly a facet.
    pub fn marked(&self) -> Result<MarkedPolytope> {
        MarkedPolytope::new(self.config()?, &self.mark_members())
    }
}

/// Writes a configuration with optional marks, points in sorted order.
pub fn write(config: &PointConfig, marks: &[Vec<LatticePoint>]) -> String {
    let mut out = format!("dim {}\n", config.ambient_dim());
    for p in config.points() {
        let row: Vec<String> = p.coords().iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for m in marks {
        let mut idx: Vec<usize> = m.iter().filter_map(|p| config.index_of(p)).map(|i| i + 1).collect();
        idx.sort_unstable();
        let words: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        out.push_str("mark ");
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_marked(mp: &MarkedPolytope) -> String {
    write(mp.config(), &mp.marked_members())
}
