use serde::Serialize;

use crate::config::PointConfig;
use crate::error::{Error, Result};
use crate::faces::facets_of;
use crate::lattice::LatticePoint;
use crate::linalg::{ext_gcd, narrow};
use crate::predicates::MarkedPolytope;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum PolytopeClass2D {
    /// `apex` is the only point with `x[axis] != 0`, and `apex[axis] = 1`.
    B1Polytope {
        axis: usize,
        apex: LatticePoint,
    },
    /// `top` are `(0,1), (1,1)` with `axis` the height coordinate; every
    /// other point has `x[axis] = 0`.
    BorderPolytope {
        axis: usize,
        top: [LatticePoint; 2],
    },
    NotBPolytope,
}

impl PolytopeClass2D {
    pub fn is_b_polytope(&self) -> bool {
        !matches!(self, PolytopeClass2D::NotBPolytope)
    }
}

fn check_planar(config: &PointConfig) -> Result<()> {
    if config.ambient_dim() != 2 {
        return Err(Error::Unsupported(format!("expected a planar set, got dimension {}", config.ambient_dim())));
    }
    if !config.is_full_dimensional() {
        return Err(Error::NotFullDimensional { ambient_dim: 2, affine_dim: config.affine_dim() });
    }
    Ok(())
}

pub fn classify_b_polytope_2d(config: &PointConfig) -> Result<PolytopeClass2D> {
    check_planar(config)?;
    for h in [1, 0] {
        let mut off = config.points().iter().filter(|p| p.coords()[h] != 0);
        if let (Some(apex), None) = (off.next(), off.next()) {
            if apex.coords()[h] == 1 {
                return Ok(PolytopeClass2D::B1Polytope { axis: h, apex: apex.clone() });
            }
        }
    }
    for h in [1, 0] {
        let w = 1 - h;
        let at = |a: i64, b: i64| {
            let mut c = [0; 2];
            c[w] = a;
            c[h] = b;
            LatticePoint::new(c.to_vec()).expect("non-negative")
        };
        let top = [at(0, 1), at(1, 1)];
        let lifted: Vec<&LatticePoint> = config.points().iter().filter(|p| p.coords()[h] != 0).collect();
        let on_ray = config.points().iter().any(|p| p.coords()[h] == 0 && p.coords()[w] >= 1);
        if lifted.len() == 2 && *lifted[0] == top[0] && *lifted[1] == top[1] && on_ray {
            return Ok(PolytopeClass2D::BorderPolytope { axis: h, top });
        }
    }
    Ok(PolytopeClass2D::NotBPolytope)
}

/// The affine map `x ↦ M x + t` with `det M = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodularMap2 {
    pub matrix: [[i64; 2]; 2],
    pub translation: [i64; 2],
}

impl UnimodularMap2 {
    pub fn new(matrix: [[i64; 2]; 2], translation: [i64; 2]) -> Result<Self> {
        let det = matrix[0][0] as i128 * matrix[1][1] as i128 - matrix[0][1] as i128 * matrix[1][0] as i128;
        if det.abs() != 1 {
            return Err(Error::InvalidSubspace(format!("matrix has determinant {det}")));
        }
        Ok(Self { matrix, translation })
    }

    pub fn identity() -> Self {
        Self { matrix: [[1, 0], [0, 1]], translation: [0, 0] }
    }

    pub fn apply(&self, x: &[i64]) -> Result<[i64; 2]> {
        let mut out = [0; 2];
        for (r, slot) in out.iter_mut().enumerate() {
            let v = self.matrix[r][0] as i128 * x[0] as i128
                + self.matrix[r][1] as i128 * x[1] as i128
                + self.translation[r] as i128;
            *slot = i64::try_from(v).map_err(|_| Error::Overflow)?;
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &UnimodularMap2) -> Result<Self> {
        let m = &self.matrix;
        let n = &inner.matrix;
        let mut matrix = [[0i64; 2]; 2];
        for (r, row) in matrix.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                let v = m[r][0] as i128 * n[0][c] as i128 + m[r][1] as i128 * n[1][c] as i128;
                *slot = i64::try_from(v).map_err(|_| Error::Overflow)?;
            }
        }
        let t = self.apply(&inner.translation)?;
        Ok(Self { matrix, translation: t })
    }

    fn image_point(&self, p: &LatticePoint) -> Result<LatticePoint> {
        LatticePoint::new(self.apply(p.coords())?.to_vec())
    }

    /// Image of a marked polygon; fails when it leaves the non-negative
    /// quadrant.
    pub fn image(&self, mp: &MarkedPolytope) -> Result<MarkedPolytope> {
        let pts = mp.config().points().iter().map(|p| self.image_point(p)).collect::<Result<Vec<_>>>()?;
        let config = PointConfig::new(2, pts)?;
        let marks = mp
            .marked()
            .iter()
            .map(|f| f.members().iter().map(|p| self.image_point(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MarkedPolytope::new(config, &marks)
    }
}

type Key = (Vec<[i64; 2]>, Vec<Vec<[i64; 2]>>);

/// A lattice frame of a polygon: the map sending `vertex` to the `x`-axis
/// with `edge` along `(1,0)`, the polygon in the upper half-plane, sheared
/// so the lowest raised row starts in `[0, height)`, and translated into the
/// quadrant.
#[derive(Clone, Debug)]
struct Frame {
    map: UnimodularMap2,
    points: Vec<[i64; 2]>,
}

fn frame(config: &PointConfig, vertex: &LatticePoint, edge: &[i64]) -> Result<Frame> {
    let g = num_integer::gcd(edge[0], edge[1]);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    let (e1, e2) = (edge[0] / g, edge[1] / g);
    // s e1 + t e2 = 1, so f = (-t, s) has det[e f] = 1
    let (_, s, t) = ext_gcd(e1 as i128, e2 as i128);
    let (f1, f2) = (narrow(-t)?, narrow(s)?);
    let v = vertex.coords();
    let base = UnimodularMap2 { matrix: [[f2, -f1], [-e2, e1]], translation: [0, 0] };
    let shift = base.apply(v)?;
    let mut map = UnimodularMap2 { matrix: base.matrix, translation: [-shift[0], -shift[1]] };
    let mut pts: Vec<[i64; 2]> = config.points().iter().map(|p| map.apply(p.coords())).collect::<Result<_>>()?;
    if pts.iter().any(|p| p[1] < 0) {
        let flip = UnimodularMap2 { matrix: [[1, 0], [0, -1]], translation: [0, 0] };
        map = flip.compose(&map)?;
        pts.iter_mut().for_each(|p| p[1] = -p[1]);
    }
    let y1 = pts
        .iter()
        .map(|p| p[1])
        .filter(|&y| y > 0)
        .min()
        .ok_or(Error::NotFullDimensional { ambient_dim: 2, affine_dim: 1 })?;
    let m = pts.iter().filter(|p| p[1] == y1).map(|p| p[0]).min().expect("row is nonempty");
    let k = m.div_euclid(y1);
    let shear = UnimodularMap2 { matrix: [[1, -k], [0, 1]], translation: [0, 0] };
    map = shear.compose(&map)?;
    for p in pts.iter_mut() {
        p[0] -= k * p[1];
    }
    let min_x = pts.iter().map(|p| p[0]).min().expect("nonempty");
    let slide = UnimodularMap2 { matrix: [[1, 0], [0, 1]], translation: [-min_x, 0] };
    map = slide.compose(&map)?;
    for p in pts.iter_mut() {
        p[0] -= min_x;
    }
    pts.sort_unstable();
    Ok(Frame { map, points: pts })
}

/// Every frame, one per (hull vertex, incident side) pair.
fn frames(config: &PointConfig) -> Result<Vec<Frame>> {
    let mut out = Vec::new();
    for side in facets_of(config)? {
        let a = side.members().first().expect("nonempty side");
        let b = side.members().last().expect("nonempty side");
        let ab = b.sub(a)?.0;
        let ba: Vec<i64> = ab.iter().map(|x| -x).collect();
        out.push(frame(config, a, &ab)?);
        out.push(frame(config, b, &ba)?);
    }
    Ok(out)
}

fn key(map: &UnimodularMap2, points: &[[i64; 2]], mp: &MarkedPolytope) -> Result<Key> {
    let mut marks = Vec::new();
    for f in mp.marked() {
        let mut m = f.members().iter().map(|p| map.apply(p.coords())).collect::<Result<Vec<_>>>()?;
        m.sort_unstable();
        marks.push(m);
    }
    marks.sort();
    Ok((points.to_vec(), marks))
}

/// The canonical frame: the lexicographically least (points, marks) image
/// over all frames.
pub fn canonical_map_2d(mp: &MarkedPolytope) -> Result<UnimodularMap2> {
    check_planar(mp.config())?;
    let mut best: Option<(Key, UnimodularMap2)> = None;
    for f in frames(mp.config())? {
        let k = key(&f.map, &f.points, mp)?;
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, f.map));
        }
    }
    Ok(best.expect("a polygon has sides").1)
}

/// Representative of the orbit of `mp` under affine unimodular maps.
pub fn unimodular_canonical_form_2d(mp: &MarkedPolytope) -> Result<MarkedPolytope> {
    canonical_map_2d(mp)?.image(mp)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum MarkedPolygonClass {
    /// `map` sends the marked side to the `x`-axis and the remaining point
    /// to `(0,1)`.
    B1Marked {
        map: UnimodularMap2,
        side: Vec<LatticePoint>,
        apex: LatticePoint,
    },
    /// `map` sends the polygon into the strip `0 ≤ y ≤ 1` with both
    /// boundary sides marked.
    B2Marked {
        map: UnimodularMap2,
        sides: [Vec<LatticePoint>; 2],
    },
    /// `map` sends the polygon to `{(0,0),(a,0),(0,1),(1,1)}`.
    FlatBorderMarked {
        map: UnimodularMap2,
        a: i64,
    },
    NotMarkedB,
}

impl MarkedPolygonClass {
    pub fn is_marked_b(&self) -> bool {
        !matches!(self, MarkedPolygonClass::NotMarkedB)
    }
}

pub fn classify_marked_polygon(mp: &MarkedPolytope) -> Result<MarkedPolygonClass> {
    let config = mp.config();
    check_planar(config)?;
    let mut fs = Vec::new();
    for side in facets_of(config)? {
        let a = side.members().first().expect("nonempty side");
        let b = side.members().last().expect("nonempty side");
        let f = frame(config, a, &b.sub(a)?.0)?;
        fs.push((side, f));
    }
    let row = |f: &Frame, p: &LatticePoint| -> Result<i64> { Ok(f.map.apply(p.coords())?[1]) };

    for (side, f) in &fs {
        if !mp.is_marked(side.members()) {
            continue;
        }
        let off: Vec<&LatticePoint> = config.points().iter().filter(|p| !side.contains(p)).collect();
        if let [apex] = off.as_slice() {
            if row(f, apex)? == 1 {
                return Ok(MarkedPolygonClass::B1Marked {
                    map: f.map,
                    side: side.members().to_vec(),
                    apex: (*apex).clone(),
                });
            }
        }
    }
    for (side, f) in &fs {
        if !mp.is_marked(side.members()) || f.points.iter().any(|p| p[1] > 1) {
            continue;
        }
        let top: Vec<LatticePoint> = config.points().iter().filter(|p| !side.contains(p)).cloned().collect();
        if top.len() >= 2 && mp.is_marked(&top) {
            return Ok(MarkedPolygonClass::B2Marked { map: f.map, sides: [side.members().to_vec(), top] });
        }
    }
    if config.len() == 4 {
        for f in frames(config)? {
            let a = f.points[3][0];
            if a > 1 && f.points == [[0, 0], [0, 1], [1, 1], [a, 0]] {
                let (_, marks) = key(&f.map, &f.points, mp)?;
                let expected = vec![vec![[0, 0], [0, 1]], vec![[0, 0], [a, 0]], vec![[1, 1], [a, 0]]];
                if marks == expected {
                    return Ok(MarkedPolygonClass::FlatBorderMarked { map: f.map, a });
                }
            }
        }
    }
    Ok(MarkedPolygonClass::NotMarkedB)
}
