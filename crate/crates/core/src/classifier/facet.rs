use serde::Serialize;

use crate::config::PointConfig;
use crate::error::{Error, Result};
use crate::lattice::{affine_dim, LatticePoint};
use crate::predicates::facet_hyperplane;

/// The standard cross-polytope in `Z^4`.
pub const CROSS_POLYTOPE: [[i64; 4]; 6] =
    [[0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 1, 0], [1, 1, 0, 0]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FacetTag {
    B1,
    B2,
    FlatBorder,
    CrossPolytope,
    Unclassified,
}

impl FacetTag {
    pub const ALL: [FacetTag; 5] =
        [FacetTag::B1, FacetTag::B2, FacetTag::CrossPolytope, FacetTag::FlatBorder, FacetTag::Unclassified];

    pub fn name(self) -> &'static str {
        match self {
            FacetTag::B1 => "B1",
            FacetTag::B2 => "B2",
            FacetTag::FlatBorder => "FlatBorder",
            FacetTag::CrossPolytope => "CrossPolytope",
            FacetTag::Unclassified => "Unclassified",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExoticSubtype {
    Pyramid,
    Circuit,
    None,
}

/// Pyramid of height one over a coordinate hyperplane: `apex` is the only
/// point with `x[coordinate] != 0`, and there it equals 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B1Witness {
    pub coordinate: usize,
    pub apex: LatticePoint,
}

/// The projection to coordinates `pair` lands in the unit triangle;
/// `degenerate` when it misses some of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B2Witness {
    pub pair: (usize, usize),
    pub degenerate: bool,
}

/// `triangle = [A, B, C]` with `A`, `B` zero on `pair` and `C` equal to 1
/// on both coordinates of `pair`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatBorderWitness {
    pub pair: (usize, usize),
    pub triangle: [LatticePoint; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum FacetClass {
    B1(B1Witness),
    B2(B2Witness),
    CrossPolytope { permutation: Vec<usize> },
    FlatBorder { witness: FlatBorderWitness, subtype: ExoticSubtype },
    Unclassified,
}

impl FacetClass {
    pub fn tag(&self) -> FacetTag {
        match self {
            FacetClass::B1(_) => FacetTag::B1,
            FacetClass::B2(_) => FacetTag::B2,
            FacetClass::CrossPolytope { .. } => FacetTag::CrossPolytope,
            FacetClass::FlatBorder { .. } => FacetTag::FlatBorder,
            FacetClass::Unclassified => FacetTag::Unclassified,
        }
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

pub fn match_b1(config: &PointConfig) -> Option<B1Witness> {
    (0..config.ambient_dim()).find_map(|i| {
        let mut nonzero = config.points().iter().filter(|p| p.coords()[i] != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some(apex), None) if apex.coords()[i] == 1 => Some(B1Witness { coordinate: i, apex: apex.clone() }),
            _ => None,
        }
    })
}

pub fn match_b2(config: &PointConfig) -> Option<B2Witness> {
    pairs(config.ambient_dim()).find_map(|(i, j)| {
        let mut seen = [false; 3];
        for p in config.points() {
            let slot = match (p.coords()[i], p.coords()[j]) {
                (0, 0) => 0,
                (1, 0) => 1,
                (0, 1) => 2,
                _ => return None,
            };
            seen[slot] = true;
        }
        Some(B2Witness { pair: (i, j), degenerate: !seen.iter().all(|&s| s) })
    })
}

pub fn match_flat_border(config: &PointConfig) -> Option<FlatBorderWitness> {
    pairs(config.ambient_dim()).find_map(|(i, j)| {
        let mut off = config.points().iter().filter(|p| p.coords()[i] != 0 && p.coords()[j] != 0);
        let c = match (off.next(), off.next()) {
            (Some(c), None) if c.coords()[i] == 1 && c.coords()[j] == 1 => c,
            _ => return None,
        };
        let base: Vec<&LatticePoint> =
            config.points().iter().filter(|p| p.coords()[i] == 0 && p.coords()[j] == 0).collect();
        for (k, a) in base.iter().enumerate() {
            for b in &base[k + 1..] {
                let tri = [(*a).clone(), (*b).clone(), c.clone()];
                if affine_dim(&tri).ok() == Some(2) {
                    return Some(FlatBorderWitness { pair: (i, j), triangle: tri });
                }
            }
        }
        None
    })
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(k) = (1..n).rev().find(|&k| p[k - 1] < p[k]) else {
            return out;
        };
        let l = (k..n).rev().find(|&l| p[k - 1] < p[l]).unwrap();
        p.swap(k - 1, l);
        p[k..].reverse();
    }
}

fn cross_polytope() -> PointConfig {
    PointConfig::from_coords(&CROSS_POLYTOPE).expect("valid literal")
}

/// A permutation `σ` with `config.permuted(σ)` equal to the standard
/// cross-polytope.
pub fn match_cross_polytope(config: &PointConfig) -> Option<Vec<usize>> {
    if config.ambient_dim() != 4 || config.len() != 6 {
        return None;
    }
    let target = cross_polytope();
    permutations(4).into_iter().find(|perm| config.permuted(perm).ok().as_ref() == Some(&target))
}

/// Syntactic classification in the fixed priority B1, B2, cross-polytope,
/// flat border. Does not decide whether `config` is a B-facet.
pub fn classify_facet(config: &PointConfig) -> Result<FacetClass> {
    classify_facet_with(config, true)
}

/// [`classify_facet`] with the flat-border matcher optionally disabled.
pub fn classify_facet_with(config: &PointConfig, flat_border: bool) -> Result<FacetClass> {
    if config.ambient_dim() != 4 {
        return Err(Error::Unsupported(format!(
            "facet classification needs dimension 4, got {}",
            config.ambient_dim()
        )));
    }
    facet_hyperplane(config)?;
    if let Some(w) = match_b1(config) {
        return Ok(FacetClass::B1(w));
    }
    if let Some(w) = match_b2(config) {
        return Ok(FacetClass::B2(w));
    }
    if let Some(permutation) = match_cross_polytope(config) {
        return Ok(FacetClass::CrossPolytope { permutation });
    }
    if flat_border {
        if let Some(witness) = match_flat_border(config) {
            let subtype = detect_exotic_subtype(config);
            return Ok(FacetClass::FlatBorder { witness, subtype });
        }
    }
    Ok(FacetClass::Unclassified)
}

#[derive(Clone, Copy)]
enum Slot {
    Fixed(i64),
    Param,
    Star,
}

use Slot::{Fixed as F, Param as P, Star as S};

const PYRAMID: [[Slot; 4]; 5] =
    [[F(0), F(0), F(0), S], [F(0), F(0), P, S], [P, F(0), F(0), S], [F(0), F(1), F(1), S], [F(1), F(1), F(0), S]];

const CIRCUIT: [[Slot; 4]; 5] = [
    [F(0), F(0), F(0), S],
    [F(1), F(1), F(0), F(0)],
    [F(0), F(1), F(0), F(1)],
    [S, F(0), F(1), F(0)],
    [F(0), F(0), S, F(0)],
];

fn fits(slot: &[Slot; 4], p: &[i64], param: &mut Option<i64>) -> bool {
    let mut bound = *param;
    for (s, &x) in slot.iter().zip(p) {
        match *s {
            Slot::Fixed(v) if v != x => return false,
            Slot::Param => match bound {
                Some(a) if a != x => return false,
                None if x < 1 => return false,
                _ => bound = Some(x),
            },
            _ => {}
        }
    }
    *param = bound;
    true
}

/// Assigns points to template slots; returns the points in slot order.
fn assign(points: &[LatticePoint], template: &[[Slot; 4]; 5]) -> Option<Vec<LatticePoint>> {
    fn go(
        points: &[LatticePoint],
        template: &[[Slot; 4]; 5],
        used: &mut [bool],
        order: &mut Vec<usize>,
        param: Option<i64>,
    ) -> bool {
        let k = order.len();
        if k == template.len() {
            return true;
        }
        for (idx, p) in points.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let mut a = param;
            if fits(&template[k], p.coords(), &mut a) {
                used[idx] = true;
                order.push(idx);
                if go(points, template, used, order, a) {
                    return true;
                }
                order.pop();
                used[idx] = false;
            }
        }
        false
    }
    if points.len() != template.len() {
        return None;
    }
    let mut used = vec![false; points.len()];
    let mut order = Vec::new();
    go(points, template, &mut used, &mut order, None).then(|| order.iter().map(|&i| points[i].clone()).collect())
}

/// Whether `config` matches the pyramid template, ignoring coplanarity.
fn pyramid_base(config: &PointConfig) -> Option<Vec<LatticePoint>> {
    permutations(4).into_iter().find_map(|perm| {
        let image = config.permuted(&perm).ok()?;
        assign(image.points(), &PYRAMID)
    })
}

/// Recognises the two exotic flat-border templates up to coordinate
/// permutation.
pub fn detect_exotic_subtype(config: &PointConfig) -> ExoticSubtype {
    if config.ambient_dim() != 4 || config.len() != 5 {
        return ExoticSubtype::None;
    }
    for perm in permutations(4) {
        let Ok(image) = config.permuted(&perm) else { continue };
        if let Some(slots) = assign(image.points(), &PYRAMID) {
            if affine_dim(&slots[1..]).ok() == Some(2) {
                return ExoticSubtype::Pyramid;
            }
        }
    }
    for perm in permutations(4) {
        let Ok(image) = config.permuted(&perm) else { continue };
        if assign(image.points(), &CIRCUIT).is_some() {
            return ExoticSubtype::Circuit;
        }
    }
    ExoticSubtype::None
}

/// Whether `config` fits the pyramid template with the base not coplanar.
pub fn is_broken_pyramid(config: &PointConfig) -> bool {
    pyramid_base(config).is_some() && detect_exotic_subtype(config) != ExoticSubtype::Pyramid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(rows: &[[i64; 4]]) -> PointConfig {
        PointConfig::from_coords(rows).unwrap()
    }

    fn five() -> PointConfig {
        cfg(&[[0, 0, 0, 5], [0, 0, 1, 4], [1, 1, 0, 3], [1, 0, 2, 2], [0, 1, 2, 2]])
    }

    fn pyramid() -> PointConfig {
        cfg(&[[0, 0, 0, 3], [0, 0, 2, 1], [2, 0, 0, 1], [0, 1, 1, 1], [1, 1, 0, 1]])
    }

    fn circuit() -> PointConfig {
        cfg(&[[0, 0, 0, 2], [1, 1, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 2, 0]])
    }

    fn pt(c: [i64; 4]) -> LatticePoint {
        LatticePoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn b1_examples() {
        let c = cfg(&[[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 1], [1, 1, 0, 0]]);
        let w = match_b1(&c).unwrap();
        assert_eq!(w.coordinate, 2);
        assert_eq!(w.apex, pt([0, 0, 1, 1]));
        assert!(match_b1(&cfg(&CROSS_POLYTOPE)).is_none());
        assert!(match_b1(&five()).is_none());
    }

    #[test]
    fn b2_examples() {
        assert!(match_b2(&cfg(&CROSS_POLYTOPE)).is_none());
        // x1 + x2 + x3 + x4 = 3 with x3, x4 <= 1 and no (*,*,1,1)
        let c = cfg(&[[3, 0, 0, 0], [0, 3, 0, 0], [2, 0, 1, 0], [0, 2, 0, 1]]);
        assert_eq!(match_b2(&c), Some(B2Witness { pair: (2, 3), degenerate: false }));
        let d = cfg(&[[3, 0, 0, 0], [0, 3, 0, 0], [1, 1, 0, 1], [0, 2, 0, 1]]);
        let w = match_b2(&d).unwrap();
        assert!(w.degenerate);
    }

    #[test]
    fn flat_border_examples() {
        let w = match_flat_border(&five()).unwrap();
        assert_eq!(w.pair, (0, 1));
        assert_eq!(w.triangle, [pt([0, 0, 0, 5]), pt([0, 0, 1, 4]), pt([1, 1, 0, 3])]);
        assert!(match_flat_border(&cfg(&CROSS_POLYTOPE)).is_none());
        // {(2,0,0,0),(0,2,0,0),(0,0,1,1),(1,1,0,0)} is both B1 and a flat border on (3,4)
        let both = cfg(&[[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 1], [1, 1, 0, 0]]);
        assert_eq!(match_flat_border(&both).unwrap().pair, (2, 3));
        let b1 = cfg(&[[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]]);
        assert!(match_b1(&b1).is_some());
        assert!(match_flat_border(&b1).is_none());
    }

    #[test]
    fn cross_polytope_witness() {
        let c = cfg(&CROSS_POLYTOPE);
        let sigma = match_cross_polytope(&c).unwrap();
        assert_eq!(sigma, vec![0, 1, 2, 3]);
        let swapped = c.permuted(&[2, 1, 0, 3]).unwrap();
        let s = match_cross_polytope(&swapped).unwrap();
        assert_eq!(swapped.permuted(&s).unwrap(), c);
        assert!(match_cross_polytope(&five()).is_none());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_facet(&cfg(&CROSS_POLYTOPE)).unwrap().tag(), FacetTag::CrossPolytope);
        match classify_facet(&five()).unwrap() {
            FacetClass::FlatBorder { subtype, .. } => assert_eq!(subtype, ExoticSubtype::None),
            other => panic!("unexpected {other:?}"),
        }
        match classify_facet(&circuit()).unwrap() {
            FacetClass::FlatBorder { subtype, .. } => assert_eq!(subtype, ExoticSubtype::Circuit),
            other => panic!("unexpected {other:?}"),
        }
        match classify_facet(&pyramid()).unwrap() {
            FacetClass::FlatBorder { subtype, .. } => assert_eq!(subtype, ExoticSubtype::Pyramid),
            other => panic!("unexpected {other:?}"),
        }
        // covector (1,0,1,1) is not strictly positive
        let zero_entry = cfg(&[[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0]]);
        assert!(classify_facet(&zero_entry).is_err());
        let low = PointConfig::from_coords(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(matches!(classify_facet(&low), Err(Error::Unsupported(_))));
    }

    #[test]
    fn exotic_subtypes_survive_permutation() {
        for perm in permutations(4) {
            assert_eq!(detect_exotic_subtype(&pyramid().permuted(&perm).unwrap()), ExoticSubtype::Pyramid);
            assert_eq!(detect_exotic_subtype(&circuit().permuted(&perm).unwrap()), ExoticSubtype::Circuit);
        }
        assert_eq!(detect_exotic_subtype(&five()), ExoticSubtype::None);
    }

    #[test]
    fn noncoplanar_pyramid_is_rejected() {
        // same template, base lifted off a plane
        let c = cfg(&[[0, 0, 0, 4], [0, 0, 2, 2], [2, 0, 0, 2], [0, 1, 1, 2], [1, 1, 0, 1]]);
        assert!(is_broken_pyramid(&c));
        assert_ne!(detect_exotic_subtype(&c), ExoticSubtype::Pyramid);
    }
}
