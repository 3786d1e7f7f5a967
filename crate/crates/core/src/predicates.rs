//! The B-predicates: B-simplices, B-faces, B-facets, B-polytopes and marked
//! B-polytopes.
//!
//! Every quantifier ranges over simplices only: point subsets are visited in
//! lexicographic order of index tuples into the sorted configuration, and
//! affinely dependent subsets are skipped. A failing [`Verdict`] carries the
//! first non-conforming simplex in that order.

use serde::Serialize;

use crate::comb::for_each_combination;
use crate::config::PointConfig;
use crate::error::{Error, Result};
use crate::faces::{facets_of, Face};
use crate::lattice::{self, hyperplane_through, lattice_height, Hyperplane, LatticePoint};

/// An affinely independent set of lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Simplex {
    vertices: Vec<LatticePoint>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        vertices.sort();
        let d = lattice::affine_dim(&vertices)?;
        if d + 1 != vertices.len() {
            return Err(Error::InvalidSimplex(format!("{} points span only dimension {d}", vertices.len())));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Why a simplex is a B-simplex: its base lies on `{x_coordinate = 0}` and
/// `apex` sits at `x_coordinate = 1`. Coordinates are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BWitness {
    pub coordinate: usize,
    pub apex: LatticePoint,
}

/// Coordinate pattern test shared by every B-simplex check: some coordinate
/// equals 1 on exactly one vertex and 0 on all others.
pub(crate) fn b_pattern(vertices: &[&LatticePoint]) -> Option<BWitness> {
    let n = vertices.first()?.dim();
    (0..n).find_map(|i| {
        let mut apex = None;
        for v in vertices {
            match v.coords()[i] {
                0 => {}
                1 if apex.is_none() => apex = Some(*v),
                _ => return None,
            }
        }
        apex.map(|a| BWitness { coordinate: i, apex: a.clone() })
    })
}

pub fn is_b_simplex(s: &Simplex) -> Option<BWitness> {
    let refs: Vec<&LatticePoint> = s.vertices.iter().collect();
    b_pattern(&refs)
}

pub fn is_b_segment(p: &LatticePoint, q: &LatticePoint) -> Result<bool> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    Ok(b_pattern(&[p, q]).is_some())
}

/// Outcome of a universally quantified simplex predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Number of simplices inspected; the full count when `holds`.
    pub simplices_checked: usize,
    pub counterexample: Option<Simplex>,
}

/// Visits every `size`-point simplex of `points` in lexicographic order and
/// stops at the first one rejected by `accept`.
fn scan_simplices<F>(points: &[LatticePoint], size: usize, mut accept: F) -> Result<Verdict>
where
    F: FnMut(&[&LatticePoint]) -> Result<bool>,
{
    let mut checked = 0;
    let mut counterexample = None;
    let mut err = None;
    let mut buf: Vec<&LatticePoint> = Vec::with_capacity(size);
    for_each_combination(points.len(), size, |idx| {
        buf.clear();
        buf.extend(idx.iter().map(|&i| &points[i]));
        let step = (|| {
            if lattice::affine_dim_of(&buf)? + 1 != size {
                return Ok(true);
            }
            checked += 1;
            accept(&buf)
        })();
        match step {
            Ok(true) => true,
            Ok(false) => {
                counterexample = Some(Simplex { vertices: buf.iter().map(|p| (*p).clone()).collect() });
                false
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Verdict { holds: counterexample.is_none(), simplices_checked: checked, counterexample })
}

/// Whether every `dim(F)`-simplex with vertices in `face` is a B-simplex.
pub fn is_b_face(config: &PointConfig, face: &Face) -> Result<bool> {
    if let Some(p) = face.members().iter().find(|p| !config.contains(p)) {
        return Err(Error::InvalidSubspace(format!("face member {p} is not in the configuration")));
    }
    let v = scan_simplices(face.members(), face.dim() + 1, |s| Ok(b_pattern(s).is_some()))?;
    Ok(v.holds)
}

/// Checks the B-facet hypotheses: affine dimension `n - 1` and a positive
/// normal covector.
pub fn facet_hyperplane(config: &PointConfig) -> Result<&Hyperplane> {
    let n = config.ambient_dim();
    if config.affine_dim() + 1 != n {
        return Err(Error::NotHyperplane { ambient_dim: n, affine_dim: config.affine_dim() });
    }
    match config.positive_hyperplane() {
        Some(h) => Ok(h),
        None => {
            let h = hyperplane_through(config.points())?;
            Err(Error::NotPositive { covector: h.covector().to_vec(), offset: h.offset() })
        }
    }
}

/// Whether every `(n-1)`-simplex with vertices in `config` is a B-simplex.
pub fn is_b_facet(config: &PointConfig) -> Result<Verdict> {
    facet_hyperplane(config)?;
    scan_simplices(config.points(), config.ambient_dim(), |s| Ok(b_pattern(s).is_some()))
}

/// Whether every `(n-1)`-simplex is a B-simplex or has the origin in its
/// affine span. Requires a full-dimensional configuration.
pub fn is_b_polytope(config: &PointConfig) -> Result<Verdict> {
    if !config.is_full_dimensional() {
        return Err(Error::NotFullDimensional { ambient_dim: config.ambient_dim(), affine_dim: config.affine_dim() });
    }
    scan_simplices(config.points(), config.ambient_dim(), |s| {
        if b_pattern(s).is_some() {
            return Ok(true);
        }
        let owned: Vec<LatticePoint> = s.iter().map(|p| (*p).clone()).collect();
        lattice::span_contains_origin(&owned)
    })
}

/// A full-dimensional configuration with a set of marked facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPolytope {
    config: PointConfig,
    marked: Vec<Face>,
    planes: Vec<Hyperplane>,
}

impl MarkedPolytope {
    /// Marks the facets whose member sets are listed in `marked`. Every entry
    /// must be exactly the member set of a facet.
    pub fn new(config: PointConfig, marked: &[Vec<LatticePoint>]) -> Result<Self> {
        let facets = Self::facets_checked(&config)?;
        let mut chosen = Vec::new();
        for m in marked {
            let mut m = m.clone();
            m.sort();
            let f = facets
                .iter()
                .find(|f| f.members() == m.as_slice())
                .ok_or_else(|| Error::InvalidMarking(format!("{m:?} is not a facet")))?;
            chosen.push(f.clone());
        }
        Self::with_faces(config, chosen)
    }

    /// Marks the facets selected by `keep`.
    pub fn from_facets<F: FnMut(&Face) -> bool>(config: PointConfig, mut keep: F) -> Result<Self> {
        let facets = Self::facets_checked(&config)?;
        let chosen = facets.into_iter().filter(|f| keep(f)).collect();
        Self::with_faces(config, chosen)
    }

    /// Every marking of `config`, in order of the bitmask over its facets.
    pub fn all_markings(config: &PointConfig) -> Result<Vec<MarkedPolytope>> {
        let facets = Self::facets_checked(config)?;
        if facets.len() > 16 {
            return Err(Error::Unsupported(format!("{} facets is too many to enumerate markings", facets.len())));
        }
        (0u32..1 << facets.len())
            .map(|mask| {
                let chosen =
                    facets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| f.clone()).collect();
                Self::with_faces(config.clone(), chosen)
            })
            .collect()
    }

    fn facets_checked(config: &PointConfig) -> Result<Vec<Face>> {
        if !config.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                ambient_dim: config.ambient_dim(),
                affine_dim: config.affine_dim(),
            });
        }
        facets_of(config)
    }

    fn with_faces(config: PointConfig, mut marked: Vec<Face>) -> Result<Self> {
        marked.sort_by(|a, b| a.members().cmp(b.members()));
        marked.dedup();
        let planes = marked.iter().map(|f| hyperplane_through(f.members())).collect::<Result<_>>()?;
        Ok(Self { config, marked, planes })
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    pub fn marked(&self) -> &[Face] {
        &self.marked
    }

    pub fn is_marked(&self, members: &[LatticePoint]) -> bool {
        self.marked.iter().any(|f| f.members() == members)
    }

    /// Marked facets as sorted member lists.
    pub fn marked_members(&self) -> Vec<Vec<LatticePoint>> {
        self.marked.iter().map(|f| f.members().to_vec()).collect()
    }

    fn marked_witness(&self, vertices: &[&LatticePoint]) -> Result<Option<usize>> {
        let n = self.config.ambient_dim();
        for (k, h) in self.planes.iter().enumerate() {
            let mut on = 0;
            let mut off_height = None;
            for v in vertices {
                match lattice_height(v, h)? {
                    0 => on += 1,
                    height => off_height = Some(height),
                }
            }
            if on == n && off_height == Some(1) {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// The marked facet over which `s` is a lattice pyramid of height one, if
/// any.
pub fn is_marked_b_simplex<'a>(mp: &'a MarkedPolytope, s: &Simplex) -> Result<Option<&'a Face>> {
    let n = mp.config.ambient_dim();
    if s.vertices.len() != n + 1 {
        return Err(Error::InvalidSimplex(format!("expected {} vertices, got {}", n + 1, s.vertices.len())));
    }
    if let Some(p) = s.vertices.iter().find(|p| !mp.config.contains(p)) {
        return Err(Error::InvalidSimplex(format!("vertex {p} is not in the configuration")));
    }
    let refs: Vec<&LatticePoint> = s.vertices.iter().collect();
    Ok(mp.marked_witness(&refs)?.map(|k| &mp.marked[k]))
}

/// Whether every full-dimensional simplex is a marked B-simplex.
pub fn is_marked_b_polytope(mp: &MarkedPolytope) -> Result<Verdict> {
    let n = mp.config.ambient_dim();
    scan_simplices(mp.config.points(), n + 1, |s| Ok(mp.marked_witness(s)?.is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec()).unwrap()
    }

    fn simplex(list: &[&[i64]]) -> Simplex {
        Simplex::new(list.iter().map(|c| pt(c)).collect()).unwrap()
    }

    fn cfg(rows: &[&[i64]]) -> PointConfig {
        PointConfig::from_coords(rows).unwrap()
    }

    #[test]
    fn b_simplex_examples() {
        let w = is_b_simplex(&simplex(&[&[0, 0, 2, 0], &[0, 1, 5, 0]])).unwrap();
        assert_eq!((w.coordinate, w.apex), (1, pt(&[0, 1, 5, 0])));
        let w = is_b_simplex(&simplex(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0]])).unwrap();
        assert_eq!((w.coordinate, w.apex), (3, pt(&[1, 0, 0, 1])));
        assert!(is_b_simplex(&simplex(&[&[0, 0, 1, 4], &[1, 1, 0, 3], &[1, 0, 2, 2], &[0, 1, 2, 2]])).is_none());
    }

    #[test]
    fn zero_dimensional_b_simplex() {
        assert!(is_b_simplex(&simplex(&[&[0, 1, 7]])).is_some());
        assert!(is_b_simplex(&simplex(&[&[2, 0, 7]])).is_none());
    }

    #[test]
    fn dependent_points_are_not_simplices() {
        assert!(matches!(Simplex::new(vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]), Err(Error::InvalidSimplex(_))));
    }

    #[test]
    fn b_segment_examples() {
        assert!(is_b_segment(&pt(&[0, 0, 3, 0]), &pt(&[1, 0, 0, 2])).unwrap());
        assert!(!is_b_segment(&pt(&[2, 0, 0, 0]), &pt(&[0, 0, 2, 0])).unwrap());
        assert!(is_b_segment(&pt(&[0, 1]), &pt(&[1, 1])).unwrap());
        assert_eq!(is_b_segment(&pt(&[0, 1]), &pt(&[0, 1])), Err(Error::CoincidentPoints));
    }

    #[test]
    fn b_face_examples() {
        let c = cfg(&[&[0, 0, 0, 5], &[0, 0, 1, 4], &[2, 0, 0, 3], &[0, 0, 2, 3], &[0, 0, 1, 0]]);
        let as_face = |list: &[&[i64]]| {
            let members: Vec<_> = list.iter().map(|c| pt(c)).collect();
            let dim = lattice::affine_dim(&members).unwrap();
            Face::from_parts(members, lattice::LatticeVector(vec![0; 4]), dim)
        };
        assert!(is_b_face(&c, &as_face(&[&[0, 0, 1, 0]])).unwrap());
        assert!(is_b_face(&c, &as_face(&[&[0, 0, 0, 5], &[0, 0, 1, 4]])).unwrap());
        let c2 = cfg(&[&[2, 0, 0, 0], &[0, 0, 2, 0], &[0, 2, 0, 0]]);
        assert!(!is_b_face(&c2, &as_face(&[&[0, 0, 2, 0], &[2, 0, 0, 0]])).unwrap());
    }

    #[test]
    fn b_facet_preconditions() {
        assert!(matches!(is_b_facet(&cfg(&[&[0, 0], &[1, 1]])), Err(Error::NotPositive { .. })));
        assert!(matches!(is_b_facet(&cfg(&[&[1, 0, 0], &[0, 1, 0]])), Err(Error::NotHyperplane { .. })));
    }

    #[test]
    fn b_facet_b1_instance() {
        // base on {x1 = 0}, apex at x1 = 1; hyperplane x1 + x2 + x3 + x4 = 3
        let c = cfg(&[&[0, 3, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 3], &[0, 1, 1, 1], &[1, 2, 0, 0]]);
        assert!(is_b_facet(&c).unwrap().holds);
    }

    #[test]
    fn b_polytope_examples() {
        assert!(is_b_polytope(&cfg(&[&[0], &[1]])).unwrap().holds);
        assert!(is_b_polytope(&cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap().holds);
        let v = is_b_polytope(&cfg(&[&[0, 0], &[2, 0], &[2, 2]])).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample.unwrap().vertices(), &[pt(&[2, 0]), pt(&[2, 2])]);
        assert!(matches!(is_b_polytope(&cfg(&[&[1, 1], &[2, 2]])), Err(Error::NotFullDimensional { .. })));
    }

    #[test]
    fn marked_b_simplex_examples() {
        let seg = MarkedPolytope::new(cfg(&[&[0], &[1]]), &[vec![pt(&[0])]]).unwrap();
        let w = is_marked_b_simplex(&seg, &simplex(&[&[0], &[1]])).unwrap().unwrap();
        assert_eq!(w.members(), &[pt(&[0])]);

        let square = cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let mp = MarkedPolytope::new(square, &[vec![pt(&[0, 0]), pt(&[1, 0])]]).unwrap();
        let w = is_marked_b_simplex(&mp, &simplex(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap().unwrap();
        assert_eq!(w.members(), &[pt(&[0, 0]), pt(&[1, 0])]);

        let tri = cfg(&[&[0, 0], &[3, 0], &[0, 3]]);
        let mp = MarkedPolytope::new(tri, &[vec![pt(&[0, 0]), pt(&[3, 0])]]).unwrap();
        assert!(is_marked_b_simplex(&mp, &simplex(&[&[0, 0], &[3, 0], &[0, 3]])).unwrap().is_none());
    }

    #[test]
    fn marked_b_polytope_examples() {
        let seg = MarkedPolytope::new(cfg(&[&[0], &[2]]), &[vec![pt(&[0])], vec![pt(&[2])]]).unwrap();
        assert!(!is_marked_b_polytope(&seg).unwrap().holds);

        let square = cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let strip =
            MarkedPolytope::new(square, &[vec![pt(&[0, 0]), pt(&[0, 1])], vec![pt(&[1, 0]), pt(&[1, 1])]]).unwrap();
        assert!(is_marked_b_polytope(&strip).unwrap().holds);

        let flat = cfg(&[&[0, 0], &[3, 0], &[0, 1], &[1, 1]]);
        let top = [pt(&[0, 1]), pt(&[1, 1])];
        let mp = MarkedPolytope::from_facets(flat, |f| f.members() != top).unwrap();
        assert_eq!(mp.marked().len(), 3);
        assert!(is_marked_b_polytope(&mp).unwrap().holds);
    }

    #[test]
    fn marking_must_be_a_facet() {
        let square = cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let diag = vec![pt(&[0, 0]), pt(&[1, 1])];
        assert!(matches!(MarkedPolytope::new(square, &[diag]), Err(Error::InvalidMarking(_))));
    }
}
