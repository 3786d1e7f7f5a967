//! Faces of a finite point configuration.
//!
//! A face here is the set of configuration points on a face of the convex
//! hull, not the geometric face itself. Every face carries an integer
//! covector whose maximum over the configuration is attained exactly on the
//! face's members.

use std::collections::BTreeMap;

use crate::comb::for_each_combination;
use crate::config::PointConfig;
use crate::error::Result;
use crate::lattice::{self, primitive, LatticePoint, LatticeVector};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    members: Vec<LatticePoint>,
    support: LatticeVector,
    dim: usize,
}

impl Face {
    pub(crate) fn from_parts(members: Vec<LatticePoint>, support: LatticeVector, dim: usize) -> Self {
        Self { members, support, dim }
    }

    /// Sorted member points.
    pub fn members(&self) -> &[LatticePoint] {
        &self.members
    }

    /// The certifying linear functional.
    pub fn support(&self) -> &LatticeVector {
        &self.support
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.members.binary_search(p).is_ok()
    }

    /// The face as a standalone configuration.
    pub fn to_config(&self) -> Result<PointConfig> {
        PointConfig::new(self.members[0].dim(), self.members.clone())
    }

    /// Coordinate positions that are nonzero on some member.
    pub fn support_axes(&self) -> Vec<usize> {
        let n = self.members[0].dim();
        (0..n).filter(|&i| self.members.iter().any(|p| p.coords()[i] != 0)).collect()
    }
}

/// Coordinates `positions` of `aff(points)` that project it isomorphically
/// onto `Q^d`.
fn chart_positions(points: &[LatticePoint], d: usize) -> Result<Vec<usize>> {
    let n = points[0].dim();
    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| p.sub(&points[0]).map(|v| v.0)).collect::<Result<_>>()?;
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    for c in 0..n {
        if chosen.len() == d {
            break;
        }
        chosen.push(c);
        let cols: Vec<Vec<i64>> = diffs.iter().map(|r| chosen.iter().map(|&j| r[j]).collect()).collect();
        if linalg::rank(&cols)? < chosen.len() {
            chosen.pop();
        }
    }
    debug_assert_eq!(chosen.len(), d);
    Ok(chosen)
}

/// Facets of a full-dimensional point set in `Z^d`, keyed by sorted member
/// indices, with outward covectors.
fn full_dim_facets(points: &[Vec<i64>], d: usize) -> Result<BTreeMap<Vec<usize>, Vec<i64>>> {
    let mut facets: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
    let mut err = None;
    for_each_combination(points.len(), d, |idx| {
        let mut step = || -> Result<()> {
            if facets.keys().any(|members| idx.iter().all(|i| members.binary_search(i).is_ok())) {
                return Ok(());
            }
            let base = &points[idx[0]];
            let rows = idx[1..].iter().map(|&i| lattice::sub_coords(&points[i], base)).collect::<Result<Vec<_>>>()?;
            if linalg::rank(&rows)? + 1 != d {
                return Ok(());
            }
            let normal = linalg::cofactor_normal(&rows, d)?;
            let (mut c, _) = primitive(&LatticeVector(normal))?;
            let level = c.dot(base)?;
            let values = points.iter().map(|p| c.dot(p)).collect::<Result<Vec<_>>>()?;
            let above = values.iter().any(|&v| v > level);
            let below = values.iter().any(|&v| v < level);
            if above && below {
                return Ok(());
            }
            if above {
                c.0.iter_mut().for_each(|x| *x = -*x);
            }
            let members: Vec<usize> = (0..points.len()).filter(|&i| values[i] == level).collect();
            facets.insert(members, c.0);
            Ok(())
        };
        match step() {
            Ok(()) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(facets),
    }
}

fn lift(chart: &[i64], positions: &[usize], n: usize) -> LatticeVector {
    let mut v = vec![0; n];
    for (&p, &x) in positions.iter().zip(chart) {
        v[p] = x;
    }
    LatticeVector(v)
}

fn add_covectors(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or(crate::Error::Overflow)).collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|i| b.binary_search(i).is_ok()).copied().collect()
}

/// Every nonempty face of `config`, including `config` itself, ordered by
/// dimension and then by members.
pub fn enumerate_faces(config: &PointConfig) -> Result<Vec<Face>> {
    let points = config.points();
    let n = config.ambient_dim();
    let d = config.affine_dim();
    let whole = Face { members: points.to_vec(), support: LatticeVector(vec![0; n]), dim: d };
    if d == 0 {
        return Ok(vec![whole]);
    }
    let positions = chart_positions(points, d)?;
    let projected: Vec<Vec<i64>> = points.iter().map(|p| positions.iter().map(|&j| p.coords()[j]).collect()).collect();
    let facets = full_dim_facets(&projected, d)?;

    // Proper faces are exactly the nonempty intersections of facets, and the
    // sum of the facets' covectors supports their intersection.
    let mut faces: BTreeMap<Vec<usize>, Vec<i64>> = facets.clone();
    let mut frontier: Vec<Vec<usize>> = faces.keys().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for (g, gc) in &facets {
                let meet = intersect(f, g);
                if meet.is_empty() || faces.contains_key(&meet) {
                    continue;
                }
                let support = add_covectors(&faces[f], gc)?;
                faces.insert(meet.clone(), support);
                next.push(meet);
            }
        }
        frontier = next;
    }

    let mut out = Vec::with_capacity(faces.len() + 1);
    for (members, chart_support) in faces {
        let pts: Vec<LatticePoint> = members.iter().map(|&i| points[i].clone()).collect();
        let dim = lattice::affine_dim(&pts)?;
        out.push(Face { members: pts, support: lift(&chart_support, &positions, n), dim });
    }
    out.push(whole);
    out.sort_by(|a, b| (a.dim, &a.members).cmp(&(b.dim, &b.members)));
    Ok(out)
}

/// Faces of codimension one inside `aff(config)`.
pub fn facets_of(config: &PointConfig) -> Result<Vec<Face>> {
    let d = config.affine_dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_faces(config)?.into_iter().filter(|f| f.dim + 1 == d).collect())
}

/// Whether a face lies in a coordinate subspace of dimension `dim + 1`.
pub fn is_v_face(face: &Face) -> bool {
    let n = face.members[0].dim();
    face.dim < n && face.support_axes().len() <= face.dim + 1
}

/// All V-faces of `config`.
pub fn v_faces(config: &PointConfig) -> Result<Vec<Face>> {
    Ok(enumerate_faces(config)?.into_iter().filter(is_v_face).collect())
}

/// Whether a V-face has no proper face that is itself a V-face. The face is
/// re-rooted as its own configuration; the V-property is still measured in
/// ambient coordinates.
pub fn is_internal(face: &Face) -> Result<bool> {
    if !is_v_face(face) {
        return Ok(false);
    }
    let own = face.to_config()?;
    Ok(enumerate_faces(&own)?
        .iter()
        .filter(|f| f.members.len() < face.members.len() || f.dim < face.dim)
        .all(|f| !is_v_face(f)))
}

/// All internal V-faces of `config`.
pub fn internal_v_faces(config: &PointConfig) -> Result<Vec<Face>> {
    let mut out = Vec::new();
    for f in v_faces(config)? {
        if is_internal(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(rows: &[&[i64]]) -> PointConfig {
        PointConfig::from_coords(rows).unwrap()
    }

    fn counts_by_dim(faces: &[Face]) -> Vec<usize> {
        let top = faces.iter().map(|f| f.dim()).max().unwrap();
        (0..=top).map(|d| faces.iter().filter(|f| f.dim() == d).count()).collect()
    }

    fn supports_are_certificates(config: &PointConfig, faces: &[Face]) {
        for f in faces {
            let values: Vec<i64> = config.points().iter().map(|p| f.support().dot(p.coords()).unwrap()).collect();
            let max = *values.iter().max().unwrap();
            let maximizers: Vec<LatticePoint> =
                config.points().iter().zip(&values).filter(|(_, &v)| v == max).map(|(p, _)| p.clone()).collect();
            assert_eq!(maximizers, f.members());
        }
    }

    #[test]
    fn triangle_faces() {
        let c = cfg(&[&[0, 0], &[1, 0], &[0, 1]]);
        let faces = enumerate_faces(&c).unwrap();
        assert_eq!(counts_by_dim(&faces), vec![3, 3, 1]);
        supports_are_certificates(&c, &faces);
        assert_eq!(facets_of(&c).unwrap().len(), 3);
    }

    #[test]
    fn segment_faces() {
        let c = cfg(&[&[0], &[1]]);
        let faces = enumerate_faces(&c).unwrap();
        assert_eq!(counts_by_dim(&faces), vec![2, 1]);
        supports_are_certificates(&c, &faces);
    }

    #[test]
    fn square_facets() {
        let c = cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(facets_of(&c).unwrap().len(), 4);
    }

    #[test]
    fn points_inside_edges_belong_to_faces() {
        let c = cfg(&[&[0, 0], &[1, 0], &[2, 0], &[0, 2], &[1, 1]]);
        let facets = facets_of(&c).unwrap();
        assert_eq!(facets.len(), 3);
        assert!(facets.iter().any(|f| f.len() == 3));
        // (1,1) sits on the hypotenuse, so it is a member of a facet but never a vertex
        let vertices: Vec<_> = enumerate_faces(&c).unwrap().into_iter().filter(|f| f.dim() == 0).collect();
        assert_eq!(vertices.len(), 3);
    }

    #[test]
    fn v_face_predicate() {
        let vertex = |c: &[i64]| {
            let p = LatticePoint::new(c.to_vec()).unwrap();
            Face::from_parts(vec![p], LatticeVector(vec![0; c.len()]), 0)
        };
        assert!(is_v_face(&vertex(&[0, 0, 3, 0])));
        assert!(!is_v_face(&vertex(&[1, 1, 0, 0])));
        let tri = cfg(&[&[2, 1, 0, 0], &[0, 1, 2, 0], &[1, 0, 1, 0]]);
        let face = enumerate_faces(&tri).unwrap().pop().unwrap();
        assert_eq!(face.dim(), 2);
        assert!(is_v_face(&face));
    }

    #[test]
    fn internal_faces_of_simple_configs() {
        let c = cfg(&[&[2, 0], &[0, 2], &[1, 1]]);
        let internal: Vec<_> = internal_v_faces(&c).unwrap().into_iter().map(|f| f.members().to_vec()).collect();
        assert_eq!(internal.len(), 2);
        assert!(internal.iter().all(|m| m.len() == 1));

        let seg = cfg(&[&[3, 0, 0], &[0, 3, 0]]);
        let internal = internal_v_faces(&seg).unwrap();
        let members: Vec<_> = internal.iter().map(|f| f.members()[0].coords().to_vec()).collect();
        assert_eq!(members, vec![vec![0, 3, 0], vec![3, 0, 0]]);
    }

    #[test]
    fn cross_polytope_internal_v_faces_are_triangles() {
        let c = cfg(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let internal = internal_v_faces(&c).unwrap();
        assert_eq!(internal.len(), 4);
        for f in &internal {
            assert_eq!(f.dim(), 2);
            assert_eq!(f.len(), 3);
            assert_eq!(f.support_axes().len(), 3);
        }
        assert!(v_faces(&c).unwrap().iter().all(|f| f.dim() == 2 || f.dim() == 3));
    }
}
