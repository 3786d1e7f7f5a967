use std::collections::BTreeSet;

use num_rational::Rational64;
use proptest::prelude::*;
use proptest::sample::subsequence;

use bfacet::census::{
    enumerate_positive_hyperplane_configs, find_exotic_instances, template_candidates, verify_main_theorem,
    verify_main_theorem_without_flat_border, verify_remark, CensusBounds, Template,
};
use bfacet::classifier::{classify_facet_with, FacetTag, CROSS_POLYTOPE};
use bfacet::linalg::{determinant, integer_kernel, rank};
use bfacet::{facets_of, PointConfig};

fn gauss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational64>> = rows.iter().map(|r| r.iter().map(|&x| Rational64::from(x)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != Rational64::from(0)) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r {
                let f = m[i][c] / m[r][c];
                for j in 0..cols {
                    let v = m[r][j];
                    m[i][j] -= f * v;
                }
            }
        }
        r += 1;
    }
    r
}

fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * cofactor_det(&minor)
        })
        .sum()
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Supporting hyperplanes through every affinely independent d-subset;
/// the points on a supporting one form a facet.
fn brute_facets(pts: &[Vec<i64>]) -> BTreeSet<Vec<Vec<i64>>> {
    let d = pts[0].len();
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let base = &pts[idx[0]];
        let diffs: Vec<Vec<i64>> = idx[1..].iter().map(|&i| sub(&pts[i], base)).collect();
        // normal by generalized cross product
        let normal: Vec<i64> = (0..d)
            .map(|k| {
                let minor: Vec<Vec<i64>> = diffs
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect())
                    .collect();
                let s = if k % 2 == 0 { 1 } else { -1 };
                s * cofactor_det(&minor) as i64
            })
            .collect();
        if normal.iter().any(|&x| x != 0) {
            let vals: Vec<i64> = pts.iter().map(|p| dot(&normal, &sub(p, base))).collect();
            if vals.iter().all(|&v| v >= 0) || vals.iter().all(|&v| v <= 0) {
                let mut face: Vec<Vec<i64>> =
                    pts.iter().zip(&vals).filter(|(_, &v)| v == 0).map(|(p, _)| p.clone()).collect();
                face.sort();
                out.insert(face);
            }
        }
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < pts.len() - d + k {
                break;
            }
        }
        idx[k] += 1;
        for j in k + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn cube(side: i64, d: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|p| (0..=side).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

fn full_dim(d: usize, side: i64, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    subsequence(cube(side, d), d + 1..=max).prop_filter("degenerate", move |pts| {
        let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
        gauss_rank(&diffs) == d
    })
}

proptest! {
    #[test]
    fn bareiss_rank_matches_rational_elimination(m in matrix(5, 5)) {
        prop_assert_eq!(rank(&m).unwrap(), gauss_rank(&m));
    }

    #[test]
    fn determinant_matches_cofactor_expansion(n in 1usize..=5, seed in prop::collection::vec(-9i64..=9, 25)) {
        let m: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..i * n + n].to_vec()).collect();
        prop_assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(4, 6)) {
        let n = m[0].len();
        let k = integer_kernel(&m, n).unwrap();
        prop_assert_eq!(k.len(), n - gauss_rank(&m));
        for v in &k {
            for row in &m {
                prop_assert_eq!(dot(row, v), 0);
            }
        }
        prop_assert_eq!(gauss_rank(&k), k.len());
    }

    #[test]
    fn polygon_sides_match_brute_force(pts in full_dim(2, 4, 7)) {
        let c = PointConfig::from_coords(&pts).unwrap();
        let got: BTreeSet<Vec<Vec<i64>>> =
            facets_of(&c).unwrap().iter().map(|f| f.members().iter().map(|p| p.coords().to_vec()).collect()).collect();
        prop_assert_eq!(got, brute_facets(&pts));
    }

    #[test]
    fn polytope_facets_match_brute_force(pts in full_dim(3, 2, 8)) {
        let c = PointConfig::from_coords(&pts).unwrap();
        let got: BTreeSet<Vec<Vec<i64>>> =
            facets_of(&c).unwrap().iter().map(|f| f.members().iter().map(|p| p.coords().to_vec()).collect()).collect();
        prop_assert_eq!(got, brute_facets(&pts));
    }
}

fn perms4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn orbit_min(pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    perms4()
        .iter()
        .map(|p| {
            let mut img: Vec<Vec<i64>> = pts.iter().map(|q| p.iter().map(|&i| q[i]).collect()).collect();
            img.sort();
            img
        })
        .min()
        .unwrap()
}

fn affine_rank(pts: &[Vec<i64>]) -> usize {
    let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    gauss_rank(&diffs)
}

/// Orbit representatives of spanning subsets of `x1+x2+x3+x4 = b`, by a
/// direct loop over all subsets.
fn direct_census(b: i64, max_points: usize) -> BTreeSet<Vec<Vec<i64>>> {
    let plane: Vec<Vec<i64>> = cube(b, 4).into_iter().filter(|p| p.iter().sum::<i64>() == b).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << plane.len()) {
        let pts: Vec<Vec<i64>> = (0..plane.len()).filter(|i| mask & (1 << i) != 0).map(|i| plane[i].clone()).collect();
        if pts.len() < 5 || pts.len() > max_points || affine_rank(&pts) != 3 {
            continue;
        }
        out.insert(orbit_min(&pts));
    }
    out
}

fn census_set(bounds: &CensusBounds) -> Vec<Vec<Vec<i64>>> {
    let (configs, _) = enumerate_positive_hyperplane_configs(bounds).unwrap();
    configs.iter().map(|c| c.to_coords()).collect()
}

#[test]
fn census_matches_direct_loop() {
    for s in [5, 6, 8, 10] {
        let bounds = CensusBounds::new(4, 1, 2, s).unwrap();
        let got: BTreeSet<Vec<Vec<i64>>> = census_set(&bounds).into_iter().collect();
        assert_eq!(got, direct_census(2, s), "S = {s}");
    }
}

#[test]
fn census_outputs_are_distinct_orbit_minima() {
    let bounds = CensusBounds::new(4, 2, 4, 6).unwrap();
    let all = census_set(&bounds);
    let mut seen = BTreeSet::new();
    for pts in &all {
        assert_eq!(&orbit_min(pts), pts);
        assert!(seen.insert(pts.clone()), "duplicate {pts:?}");
        assert!((5..=6).contains(&pts.len()));
        assert_eq!(affine_rank(pts), 3);
    }
}

#[test]
fn census_contains_cross_polytope() {
    let bounds = CensusBounds::new(4, 1, 2, 6).unwrap();
    let cross = orbit_min(&CROSS_POLYTOPE.iter().map(|p| p.to_vec()).collect::<Vec<_>>());
    assert!(census_set(&bounds).contains(&cross));
}

#[test]
fn census_grows_with_bounds() {
    let small: BTreeSet<_> = census_set(&CensusBounds::new(4, 1, 2, 6).unwrap()).into_iter().collect();
    for wider in [CensusBounds::new(4, 1, 3, 6), CensusBounds::new(4, 2, 2, 6), CensusBounds::new(4, 1, 2, 7)] {
        let big: BTreeSet<_> = census_set(&wider.unwrap()).into_iter().collect();
        assert!(small.is_subset(&big));
        assert!(big.len() > small.len());
    }
}

#[test]
fn census_reports_are_deterministic() {
    let bounds = CensusBounds::new(4, 2, 3, 6).unwrap();
    let a = verify_main_theorem(&bounds).unwrap();
    let b = verify_main_theorem(&bounds).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
    let r1 = verify_remark(&bounds, 50, 7).unwrap();
    let r2 = verify_remark(&bounds, 50, 7).unwrap();
    assert_eq!(r1.without_timing(), r2.without_timing());
}

#[test]
fn dropping_flat_borders_breaks_the_theorem() {
    let bounds = CensusBounds::new(4, 1, 3, 6).unwrap();
    let report = verify_main_theorem_without_flat_border(&bounds).unwrap();
    assert!(!report.violations.is_empty());
    for inst in find_exotic_instances(3, 5).unwrap() {
        assert_eq!(classify_facet_with(&inst.config, false).unwrap().tag(), FacetTag::Unclassified);
    }
}

#[test]
fn pyramid_bases_on_positive_hyperplanes_are_planar() {
    // the hyperplane equations force P3 - P2 = a (P5 - P4)
    assert!(template_candidates(Template::Pyramid, 4, 6, false).is_empty());
    let coplanar = template_candidates(Template::Pyramid, 4, 6, true);
    assert!(!coplanar.is_empty());
    for c in &coplanar {
        let h = c.positive_hyperplane().unwrap();
        assert!(h.is_positive());
    }
}
