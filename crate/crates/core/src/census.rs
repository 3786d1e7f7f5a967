//! Exhaustive enumeration of candidate facets at bounded scale and the
//! verification reports built on it.
//!
//! A census enumerates, for every primitive covector `a` with entries in
//! `1..=A` and every offset `b` in `1..=B`, the subsets of size `n+1..=S` of
//! the lattice points on `a·x = b` that span the hyperplane. Exactly one
//! representative per coordinate-permutation orbit is kept: a subset is
//! emitted iff it is its own canonical form, so no global deduplication set
//! is needed and the work splits into independent tasks.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{
    classify_b_polytope_2d, classify_facet, classify_facet_with, classify_marked_polygon, detect_exotic_subtype,
    match_b1, permutations, ExoticSubtype, FacetClass, FacetTag,
};
use crate::comb::{first_combination, for_each_combination, next_combination};
use crate::config::PointConfig;
use crate::error::{Error, Result};
use crate::faces::{enumerate_faces, internal_v_faces, is_v_face, v_faces, Face};
use crate::lattice::{self, LatticePoint};
use crate::predicates::{is_b_facet, is_b_polytope, is_marked_b_polytope, MarkedPolytope};
use crate::reductions::{
    project, ray_apexes, reduction_hypothesis, section_from_apex, section_marked, CoordinateSubspace, SectionPlane,
};

const MAX_PACKED_DIM: usize = 6;
const MAX_COORD: i64 = u16::MAX as i64;
const MAX_SUBSET: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusBounds {
    pub ambient_dim: usize,
    pub max_covector: i64,
    pub max_offset: i64,
    pub max_points: usize,
    pub coordinate_cap: Option<i64>,
}

impl CensusBounds {
    pub fn new(ambient_dim: usize, max_covector: i64, max_offset: i64, max_points: usize) -> Result<Self> {
        let b = Self { ambient_dim, max_covector, max_offset, max_points, coordinate_cap: None };
        b.validate()?;
        Ok(b)
    }

    pub fn with_coordinate_cap(mut self, cap: i64) -> Result<Self> {
        self.coordinate_cap = Some(cap);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Unsupported(m));
        if !(2..=MAX_PACKED_DIM).contains(&self.ambient_dim) {
            return bad(format!("ambient dimension must be in 2..={MAX_PACKED_DIM}"));
        }
        if self.max_covector < 1 || self.max_offset < 1 {
            return bad("covector and offset bounds must be positive".into());
        }
        if self.max_offset > MAX_COORD {
            return bad(format!("offset bound must be at most {MAX_COORD}"));
        }
        if self.max_points < self.ambient_dim + 1 || self.max_points > MAX_SUBSET {
            return bad(format!("point bound must be in {}..={MAX_SUBSET}", self.ambient_dim + 1));
        }
        if matches!(self.coordinate_cap, Some(m) if m < 1) {
            return bad("coordinate cap must be positive".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub hyperplanes: usize,
    pub subsets: u64,
    pub configs: usize,
}

/// Lattice points of `a·x = b` in the non-negative orthant, sorted.
pub fn hyperplane_points(a: &[i64], b: i64, cap: Option<i64>) -> Vec<Vec<i64>> {
    fn go(a: &[i64], rest: i64, cap: Option<i64>, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let k = cur.len();
        if k + 1 == a.len() {
            if rest % a[k] == 0 && cap.is_none_or(|m| rest / a[k] <= m) {
                cur.push(rest / a[k]);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let mut top = rest / a[k];
        if let Some(m) = cap {
            top = top.min(m);
        }
        for x in 0..=top {
            cur.push(x);
            go(a, rest - a[k] * x, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(a, b, cap, &mut Vec::with_capacity(a.len()), &mut out);
    out
}

fn covectors(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut a = vec![1i64; n];
    loop {
        if a.iter().fold(0, |g, &x| num_integer::gcd(g, x)) == 1 {
            out.push(a.clone());
        }
        let Some(k) = (0..n).rev().find(|&k| a[k] < max) else {
            return out;
        };
        a[k] += 1;
        a[k + 1..].iter_mut().for_each(|x| *x = 1);
    }
}

fn pack(p: &[i64]) -> u128 {
    p.iter().fold(0u128, |acc, &x| acc << 16 | x as u128)
}

struct Plane {
    points: Vec<Vec<i64>>,
    /// `keys[perm][i]`: packed image of point `i` under permutation `perm`;
    /// row 0 is the identity.
    keys: Vec<Vec<u128>>,
}

impl Plane {
    fn new(points: Vec<Vec<i64>>, perms: &[Vec<usize>]) -> Self {
        let keys = perms
            .iter()
            .map(|perm| points.iter().map(|p| pack(&perm.iter().map(|&j| p[j]).collect::<Vec<_>>())).collect())
            .collect();
        Self { points, keys }
    }

    /// Whether the subset is the lexicographically least member of its
    /// coordinate-permutation orbit.
    fn is_self_canonical(&self, idx: &[usize], buf: &mut Vec<u128>) -> bool {
        let own = &self.keys[0];
        for row in &self.keys[1..] {
            buf.clear();
            buf.extend(idx.iter().map(|&i| row[i]));
            buf.sort_unstable();
            for (k, &key) in buf.iter().enumerate() {
                let mine = own[idx[k]];
                if key < mine {
                    return false;
                }
                if key > mine {
                    break;
                }
            }
        }
        true
    }
}

/// Lexicographically least image of `config` over all coordinate
/// permutations.
pub fn canonical_form_coord_perm(config: &PointConfig) -> PointConfig {
    permutations(config.ambient_dim())
        .iter()
        .map(|perm| config.permuted(perm).expect("permutation preserves validity"))
        .min_by(|a, b| a.points().cmp(b.points()))
        .expect("at least the identity")
}

fn planes(bounds: &CensusBounds) -> Vec<Plane> {
    let perms = permutations(bounds.ambient_dim);
    let mut tasks = Vec::new();
    for a in covectors(bounds.ambient_dim, bounds.max_covector) {
        for b in 1..=bounds.max_offset {
            let pts = hyperplane_points(&a, b, bounds.coordinate_cap);
            if pts.len() > bounds.ambient_dim {
                tasks.push(Plane::new(pts, &perms));
            }
        }
    }
    tasks
}

/// Runs `f` on every census configuration in parallel and returns the
/// results in enumeration order.
pub fn census_map<R, F>(bounds: &CensusBounds, f: F) -> Result<(Vec<R>, EnumerationStats)>
where
    R: Send,
    F: Fn(PointConfig) -> Result<Option<R>> + Sync,
{
    bounds.validate()?;
    let n = bounds.ambient_dim;
    let planes = planes(bounds);
    let jobs: Vec<(usize, usize)> =
        planes.iter().enumerate().flat_map(|(k, p)| (0..p.points.len()).map(move |i| (k, i))).collect();
    let chunks: Vec<Result<(Vec<R>, u64)>> = jobs
        .par_iter()
        .map(|&(k, first)| {
            let plane = &planes[k];
            let len = plane.points.len();
            let mut out = Vec::new();
            let mut subsets = 0u64;
            let mut buf = Vec::with_capacity(bounds.max_points);
            let mut rows: Vec<Vec<i64>> = Vec::with_capacity(bounds.max_points);
            for size in n + 1..=bounds.max_points.min(len - first) {
                let rest = len - first - 1;
                let Some(mut tail) = first_combination(rest, size - 1) else { continue };
                let mut idx = vec![first; size];
                loop {
                    for (slot, &t) in idx[1..].iter_mut().zip(&tail) {
                        *slot = first + 1 + t;
                    }
                    subsets += 1;
                    if plane.is_self_canonical(&idx, &mut buf) {
                        rows.clear();
                        let base = &plane.points[first];
                        for &i in &idx[1..] {
                            rows.push(plane.points[i].iter().zip(base).map(|(x, y)| x - y).collect());
                        }
                        if crate::linalg::rank(&rows)? + 1 == n {
                            let pts = idx
                                .iter()
                                .map(|&i| LatticePoint::new(plane.points[i].clone()))
                                .collect::<Result<Vec<_>>>()?;
                            if let Some(r) = f(PointConfig::new(n, pts)?)? {
                                out.push(r);
                            }
                        }
                    }
                    if !next_combination(&mut tail, rest) {
                        break;
                    }
                }
            }
            Ok((out, subsets))
        })
        .collect();
    let mut stats = EnumerationStats { hyperplanes: planes.len(), ..Default::default() };
    let mut all = Vec::new();
    for c in chunks {
        let (out, subsets) = c?;
        stats.subsets += subsets;
        all.extend(out);
    }
    stats.configs = all.len();
    Ok((all, stats))
}

/// Every census configuration, one per coordinate-permutation orbit.
pub fn enumerate_positive_hyperplane_configs(bounds: &CensusBounds) -> Result<(Vec<PointConfig>, EnumerationStats)> {
    census_map(bounds, |c| Ok(Some(c)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TagCount {
    pub b_facet: usize,
    pub not_b_facet: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub config: PointConfig,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub statement: String,
    pub bounds: Option<CensusBounds>,
    pub total: usize,
    pub checks: usize,
    pub counts: BTreeMap<String, TagCount>,
    pub notes: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
}

impl CensusReport {
    fn new(statement: &str, bounds: Option<CensusBounds>) -> Self {
        Self {
            statement: statement.into(),
            bounds,
            total: 0,
            checks: 0,
            counts: BTreeMap::new(),
            notes: BTreeMap::new(),
            violations: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// The report with timing zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> Self {
        Self { elapsed_ms: 0, ..self.clone() }
    }

    fn note(&mut self, key: &str, by: usize) {
        *self.notes.entry(key.into()).or_default() += by;
    }

    fn tally(&mut self, tag: FacetTag, b_facet: bool) {
        let c = self.counts.entry(tag.name().into()).or_default();
        if b_facet {
            c.b_facet += 1;
        } else {
            c.not_b_facet += 1;
        }
    }

    fn violate(&mut self, config: &PointConfig, expected: impl Into<String>, got: impl Into<String>) {
        self.violations.push(Violation { config: config.clone(), expected: expected.into(), got: got.into() });
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }
}

/// Per-configuration outcome gathered in parallel and folded in order.
#[derive(Default)]
struct Partial {
    tags: Vec<(FacetTag, bool)>,
    checks: usize,
    notes: Vec<(&'static str, usize)>,
    violations: Vec<(String, String)>,
}

impl Partial {
    fn violate(&mut self, expected: impl Into<String>, got: impl Into<String>) {
        self.violations.push((expected.into(), got.into()));
    }
}

fn run_census<F>(statement: &str, bounds: &CensusBounds, f: F) -> Result<CensusReport>
where
    F: Fn(&PointConfig) -> Result<Partial> + Sync,
{
    let start = Instant::now();
    let (parts, _) = census_map(bounds, |c| {
        let p = f(&c)?;
        Ok(Some((c, p)))
    })?;
    let mut report = CensusReport::new(statement, Some(*bounds));
    report.total = parts.len();
    for (config, p) in parts {
        for (tag, b) in p.tags {
            report.tally(tag, b);
        }
        report.checks += p.checks;
        for (k, v) in p.notes {
            report.note(k, v);
        }
        for (e, g) in p.violations {
            report.violate(&config, e, g);
        }
    }
    Ok(report.finish(start))
}

fn require_dim4(bounds: &CensusBounds) -> Result<()> {
    if bounds.ambient_dim != 4 {
        return Err(Error::Unsupported("the facet classification census runs in dimension 4".into()));
    }
    Ok(())
}

/// Every B-facet of the census is matched by some pattern.
pub fn verify_main_theorem(bounds: &CensusBounds) -> Result<CensusReport> {
    verify_main_theorem_with(bounds, classify_facet)
}

/// [`verify_main_theorem`] against an arbitrary classifier.
pub fn verify_main_theorem_with<C>(bounds: &CensusBounds, classify: C) -> Result<CensusReport>
where
    C: Fn(&PointConfig) -> Result<FacetClass> + Sync,
{
    require_dim4(bounds)?;
    run_census("theorem", bounds, |c| {
        let mut p = Partial::default();
        let class = classify(c)?;
        let holds = is_b_facet(c)?.holds;
        p.tags.push((class.tag(), holds));
        if holds {
            p.checks += 1;
            if class.tag() == FacetTag::Unclassified {
                p.violate("B-facet matched by a pattern", "Unclassified");
            }
        }
        Ok(p)
    })
}

/// The census with the flat-border matcher disabled; used to show the
/// theorem check is sensitive to that class.
pub fn verify_main_theorem_without_flat_border(bounds: &CensusBounds) -> Result<CensusReport> {
    verify_main_theorem_with(bounds, |c| classify_facet_with(c, false))
}

fn remark_check(c: &PointConfig, p: &mut Partial) -> Result<()> {
    let class = classify_facet(c)?;
    let holds = is_b_facet(c)?.holds;
    p.tags.push((class.tag(), holds));
    match class.tag() {
        FacetTag::B1 | FacetTag::B2 | FacetTag::CrossPolytope => {
            p.checks += 1;
            if !holds {
                p.violate(format!("{} pattern is a B-facet", class.tag().name()), "not a B-facet");
            }
        }
        FacetTag::FlatBorder => {
            p.notes.push((if holds { "flat_border_b_facet" } else { "flat_border_not_b_facet" }, 1))
        }
        FacetTag::Unclassified => {}
    }
    Ok(())
}

/// Pattern matches other than flat borders are B-facets, and flat borders
/// occur on both sides. `samples` extra configurations are drawn from wider
/// bounds with a fixed seed.
pub fn verify_remark(bounds: &CensusBounds, samples: usize, seed: u64) -> Result<CensusReport> {
    require_dim4(bounds)?;
    let start = Instant::now();
    let mut report = run_census("remark", bounds, |c| {
        let mut p = Partial::default();
        remark_check(c, &mut p)?;
        Ok(p)
    })?;
    let wide = CensusBounds {
        max_covector: bounds.max_covector + 2,
        max_offset: bounds.max_offset * 2 + 2,
        max_points: bounds.max_points.max(8),
        ..*bounds
    };
    for c in sample_configs(&wide, samples, seed)? {
        let mut p = Partial::default();
        remark_check(&c, &mut p)?;
        report.note("sampled", 1);
        report.checks += p.checks;
        for (k, v) in p.notes {
            report.note(k, v);
        }
        for (e, g) in p.violations {
            report.violate(&c, e, g);
        }
    }
    for key in ["flat_border_b_facet", "flat_border_not_b_facet"] {
        if !report.notes.contains_key(key) {
            let witness = PointConfig::from_coords(&[vec![0i64; 4]]).expect("origin");
            report.violate(&witness, format!("at least one {key}"), "none found");
        }
    }
    let elapsed = start.elapsed().as_millis() as u64;
    report.elapsed_ms = elapsed;
    Ok(report)
}

/// Random configurations on positive hyperplanes within `bounds`, reproducible
/// from `seed`. Each is a subset of the lattice points of a random
/// hyperplane, spanning it.
pub fn sample_configs(bounds: &CensusBounds, count: usize, seed: u64) -> Result<Vec<PointConfig>> {
    bounds.validate()?;
    let n = bounds.ambient_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < count.saturating_mul(200).max(1000) {
        attempts += 1;
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=bounds.max_covector)).collect();
        if a.iter().fold(0, |g, &x| num_integer::gcd(g, x)) != 1 {
            continue;
        }
        let b = rng.gen_range(1..=bounds.max_offset);
        let mut pts = hyperplane_points(&a, b, bounds.coordinate_cap);
        if pts.len() < n + 1 {
            continue;
        }
        pts.shuffle(&mut rng);
        let size = rng.gen_range(n + 1..=bounds.max_points.min(pts.len()));
        let chosen = pts[..size].iter().map(|p| LatticePoint::new(p.clone())).collect::<Result<Vec<_>>>()?;
        let c = PointConfig::new(n, chosen)?;
        if c.affine_dim() + 1 == n {
            out.push(c);
        }
    }
    Ok(out)
}

fn has_unit_ray_point(c: &PointConfig) -> bool {
    c.points().iter().any(|p| p.ray_axis().is_some_and(|i| p.coords()[i] == 1))
}

/// The face restricted to its coordinate subspace.
fn face_in_own_subspace(face: &Face) -> Result<PointConfig> {
    let n = face.members()[0].dim();
    let axes = face.support_axes();
    let config = face.to_config()?;
    if axes.len() == n {
        return Ok(config);
    }
    let e = CoordinateSubspace::new((0..n).filter(|i| !axes.contains(i)).collect(), n)?;
    project(&config, &e)
}

/// The unit-ray claim and the three internal V-face statements. The last
/// statement is checked on configurations without unit ray points, which is
/// the setting in which it is used.
pub fn verify_claims(bounds: &CensusBounds) -> Result<CensusReport> {
    require_dim4(bounds)?;
    run_census("claims", bounds, |c| {
        let mut p = Partial::default();
        let holds = is_b_facet(c)?.holds;
        if holds && has_unit_ray_point(c) {
            p.checks += 1;
            p.notes.push(("unit_ray_b_facets", 1));
            if match_b1(c).is_none() {
                p.violate("B1 match for a B-facet with a unit ray point", "no B1 witness");
            }
        }

        let faces = enumerate_faces(c)?;
        let whole = faces.iter().find(|f| f.len() == c.len()).expect("the configuration is its own face");
        p.checks += 1;
        if !is_v_face(whole) {
            p.violate("configuration is a V-face", "not a V-face");
        }

        let vs = v_faces(c)?;
        let internal = internal_v_faces(c)?;
        for v in &vs {
            p.checks += 1;
            if !internal.iter().any(|i| i.members().iter().all(|m| v.contains(m))) {
                p.violate(format!("V-face {:?} contains an internal V-face", v.members()), "none");
            }
        }

        if has_unit_ray_point(c) {
            p.notes.push(("unit_ray_configs_skipped_for_internal_check", 1));
        } else {
            for f in &internal {
                p.checks += 1;
                let sub = face_in_own_subspace(f)?;
                if is_b_facet(&sub)?.holds {
                    p.violate(format!("internal V-face {:?} is not a B-facet in its subspace", f.members()), "B-facet");
                }
            }
        }
        Ok(p)
    })
}

/// Projections along coordinate subspaces meeting a B-facet in a non-B
/// V-face are B-polytopes.
pub fn verify_lemma_projection(bounds: &CensusBounds) -> Result<CensusReport> {
    run_census("projection", bounds, |c| {
        let mut p = Partial::default();
        if !is_b_facet(c)?.holds {
            return Ok(p);
        }
        for e in CoordinateSubspace::all_proper(c.ambient_dim()) {
            match reduction_hypothesis(c, &e) {
                Ok(_) => {}
                Err(Error::HypothesisViolated(_)) => continue,
                Err(err) => return Err(err),
            }
            p.checks += 1;
            let image = project(c, &e)?;
            match is_b_polytope(&image) {
                Ok(v) if v.holds => {}
                Ok(v) => p.violate(
                    format!("projection along {e} is a B-polytope"),
                    format!("counterexample {:?}", v.counterexample.map(|s| s.vertices().to_vec())),
                ),
                Err(err) => p.violate(format!("projection along {e} is a B-polytope"), err.to_string()),
            }
        }
        Ok(p)
    })
}

/// Sections by the span of a pyramid base, and by lines through two points
/// for two-dimensional `E`. For B-facets the section is a marked
/// B-polytope; when `τ ∖ E = τ_H` the two properties agree for every
/// configuration.
pub fn verify_lemma_section(bounds: &CensusBounds) -> Result<CensusReport> {
    run_census("section", bounds, |c| {
        let mut p = Partial::default();
        let facet = is_b_facet(c)?.holds;
        let n = c.ambient_dim();
        let mut sections = Vec::new();
        for apex in ray_apexes(c)? {
            let axis = apex.ray_axis().expect("ray point");
            let e = CoordinateSubspace::ray(axis, n)?;
            match section_from_apex(c, &apex) {
                Ok(s) => sections.push((e, s, "apex_sections")),
                Err(Error::HypothesisViolated(_)) => {}
                Err(err) => return Err(err),
            }
        }
        if n >= 4 {
            for e in CoordinateSubspace::all_proper(n).into_iter().filter(|e| e.dim() == n - 2) {
                if reduction_hypothesis(c, &e).is_err() {
                    continue;
                }
                let outside: Vec<&LatticePoint> = c.points().iter().filter(|q| !e.contains(q)).collect();
                let mut seen = Vec::new();
                for (k, a) in outside.iter().enumerate() {
                    for b in &outside[k + 1..] {
                        let span = lattice::AffineSpan::of_points(&[(*a).clone(), (*b).clone()])?;
                        match section_marked(c, &e, &SectionPlane::Explicit(span)) {
                            Ok(s) => {
                                if !seen.contains(&s.members) {
                                    seen.push(s.members.clone());
                                    sections.push((e.clone(), s, "line_sections"));
                                }
                            }
                            Err(Error::HypothesisViolated(_)) => {}
                            Err(err) => return Err(err),
                        }
                    }
                }
            }
        }
        for (e, s, kind) in sections {
            p.notes.push((kind, 1));
            let marked_b = is_marked_b_polytope(&s.polytope)?.holds;
            if facet {
                p.checks += 1;
                if !marked_b {
                    p.violate(format!("section for {e} is a marked B-polytope"), "not marked B");
                }
            }
            if s.covers_complement(c, &e) {
                p.checks += 1;
                p.notes.push(("biconditional_checks", 1));
                if marked_b != facet {
                    p.violate(
                        format!("section for {e} marked B iff B-facet ({facet})"),
                        format!("marked B = {marked_b}"),
                    );
                }
            }
        }
        Ok(p)
    })
}

fn grid(side: i64, dim: usize) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let total = (side + 1).pow(dim as u32);
    for k in 0..total {
        let mut c = Vec::with_capacity(dim);
        let mut r = k;
        for _ in 0..dim {
            c.push(r % (side + 1));
            r /= side + 1;
        }
        c.reverse();
        out.push(LatticePoint::new(c).expect("non-negative"));
    }
    out.sort();
    out
}

fn subsets_of(points: &[LatticePoint], min: usize, max: usize) -> Vec<Vec<LatticePoint>> {
    let mut out = Vec::new();
    for k in min..=max.min(points.len()) {
        for_each_combination(points.len(), k, |idx| {
            out.push(idx.iter().map(|&i| points[i].clone()).collect());
            true
        });
    }
    out
}

/// Exhaustive checks of the planar classifications and the one-dimensional
/// statements. Grid sides and size limits are parameters so the test suite
/// can run smaller instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarBounds {
    pub polytope_side: i64,
    pub polytope_points: usize,
    pub marked_side: i64,
    pub marked_points: usize,
    pub line_max: i64,
}

impl Default for PlanarBounds {
    fn default() -> Self {
        Self { polytope_side: 4, polytope_points: 6, marked_side: 3, marked_points: 5, line_max: 12 }
    }
}

/// Brute-force B-polytope test against the planar classifier on every
/// full-dimensional subset of the grid.
pub fn verify_b_polygons(bounds: &PlanarBounds) -> Result<CensusReport> {
    let start = Instant::now();
    let mut report = CensusReport::new("b-polygons", None);
    let polys: Vec<Result<Option<(PointConfig, bool, bool)>>> =
        subsets_of(&grid(bounds.polytope_side, 2), 3, bounds.polytope_points)
            .into_par_iter()
            .map(|pts| {
                let c = PointConfig::new(2, pts)?;
                if !c.is_full_dimensional() {
                    return Ok(None);
                }
                let brute = is_b_polytope(&c)?.holds;
                let class = classify_b_polytope_2d(&c)?.is_b_polytope();
                Ok(Some((c, brute, class)))
            })
            .collect();
    for r in polys {
        if let Some((c, brute, class)) = r? {
            report.total += 1;
            report.checks += 1;
            if brute {
                report.note("b_polytopes", 1);
            }
            if brute != class {
                report.violate(&c, format!("B-polytope = {brute}"), format!("classified = {class}"));
            }
        }
    }

    Ok(report.finish(start))
}

/// Brute-force marked B-polytope test against the marked classifier, over
/// every marking of every full-dimensional grid subset.
pub fn verify_marked_polygons(bounds: &PlanarBounds) -> Result<CensusReport> {
    let start = Instant::now();
    let mut report = CensusReport::new("marked-polygons", None);
    let marked: Vec<Result<Vec<(MarkedPolytope, bool, bool)>>> =
        subsets_of(&grid(bounds.marked_side, 2), 3, bounds.marked_points)
            .into_par_iter()
            .map(|pts| {
                let c = PointConfig::new(2, pts)?;
                if !c.is_full_dimensional() {
                    return Ok(Vec::new());
                }
                MarkedPolytope::all_markings(&c)?
                    .into_iter()
                    .map(|mp| {
                        let brute = is_marked_b_polytope(&mp)?.holds;
                        let class = classify_marked_polygon(&mp)?.is_marked_b();
                        Ok((mp, brute, class))
                    })
                    .collect()
            })
            .collect();
    for r in marked {
        for (mp, brute, class) in r? {
            report.total += 1;
            report.checks += 1;
            if brute {
                report.note("marked_b_polygons", 1);
            }
            if brute != class {
                report.violate(
                    mp.config(),
                    format!("marked B-polygon = {brute} with marks {:?}", mp.marked_members()),
                    format!("classified = {class}"),
                );
            }
        }
    }

    Ok(report.finish(start))
}

/// On the line only `{0,1}` is a B-polytope, and the marked B-polytopes are
/// the unit segments with a marked endpoint.
pub fn verify_segments(bounds: &PlanarBounds) -> Result<CensusReport> {
    let start = Instant::now();
    let mut report = CensusReport::new("segments", None);
    let line: Vec<LatticePoint> = (0..=bounds.line_max).map(|x| LatticePoint::new(vec![x]).expect("x >= 0")).collect();
    for pts in subsets_of(&line, 2, line.len()) {
        let c = PointConfig::new(1, pts)?;
        let xs: Vec<i64> = c.points().iter().map(|p| p.coords()[0]).collect();
        report.total += 1;
        report.checks += 1;
        let b = is_b_polytope(&c)?.holds;
        if b != (xs == [0, 1]) {
            report.violate(&c, "only {0,1} is a B-polytope", format!("B-polytope = {b}"));
        }
        let unit = xs.len() == 2 && xs[1] - xs[0] == 1;
        for mp in MarkedPolytope::all_markings(&c)? {
            report.checks += 1;
            let expected = unit && !mp.marked().is_empty();
            let got = is_marked_b_polytope(&mp)?.holds;
            if got {
                report.note("marked_b_segments", 1);
            }
            if got != expected {
                report.violate(
                    &c,
                    format!("marked B = {expected} with {} marks", mp.marked().len()),
                    format!("marked B = {got}"),
                );
            }
        }
    }
    Ok(report.finish(start))
}

/// The three planar and linear checks merged into one report.
pub fn verify_2d_lemmas(bounds: &PlanarBounds) -> Result<CensusReport> {
    let start = Instant::now();
    let mut report = CensusReport::new("2d", None);
    for part in [verify_b_polygons(bounds)?, verify_marked_polygons(bounds)?, verify_segments(bounds)?] {
        report.total += part.total;
        report.checks += part.checks;
        for (k, v) in part.notes {
            report.note(&k, v);
        }
        report.violations.extend(part.violations);
    }
    Ok(report.finish(start))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Template {
    Pyramid,
    Circuit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExoticInstance {
    pub template: Template,
    pub config: PointConfig,
    pub covector: Vec<i64>,
    pub offset: i64,
}

/// Template fillings lying on a positive hyperplane. For the pyramid,
/// `coplanar` selects whether the last four points must span a plane or
/// must not.
pub fn template_candidates(template: Template, max_a: i64, max_star: i64, coplanar: bool) -> Vec<PointConfig> {
    let mut out = Vec::new();
    let mut push = |rows: Vec<[i64; 4]>| {
        let Ok(c) = PointConfig::from_coords(&rows) else { return };
        if c.len() != 5 || c.affine_dim() != 3 || c.positive_hyperplane().is_none() {
            return;
        }
        if template == Template::Pyramid {
            let base: Vec<LatticePoint> =
                rows[1..].iter().map(|r| LatticePoint::new(r.to_vec()).expect("non-negative")).collect();
            if (lattice::affine_dim(&base).ok() == Some(2)) != coplanar {
                return;
            }
        }
        let canon = canonical_form_coord_perm(&c);
        if !out.contains(&canon) {
            out.push(canon);
        }
    };
    let s = 0..=max_star;
    match template {
        Template::Pyramid => {
            for a in 1..=max_a {
                for s1 in s.clone() {
                    for s2 in s.clone() {
                        for s3 in s.clone() {
                            for s4 in s.clone() {
                                for s5 in s.clone() {
                                    push(vec![
                                        [0, 0, 0, s1],
                                        [0, 0, a, s2],
                                        [a, 0, 0, s3],
                                        [0, 1, 1, s4],
                                        [1, 1, 0, s5],
                                    ]);
                                }
                            }
                        }
                    }
                }
            }
        }
        Template::Circuit => {
            for s1 in s.clone() {
                for s4 in s.clone() {
                    for s5 in s.clone() {
                        push(vec![[0, 0, 0, s1], [1, 1, 0, 0], [0, 1, 0, 1], [s4, 0, 1, 0], [0, 0, s5, 0]]);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.points().cmp(b.points()));
    out
}

/// Template instances that are B-facets and classify as flat borders.
pub fn find_exotic_instances(max_a: i64, max_star: i64) -> Result<Vec<ExoticInstance>> {
    let mut out = Vec::new();
    for template in [Template::Pyramid, Template::Circuit] {
        let found: Vec<Result<Option<ExoticInstance>>> = template_candidates(template, max_a, max_star, true)
            .into_par_iter()
            .map(|c| {
                if !is_b_facet(&c)?.holds || classify_facet(&c)?.tag() != FacetTag::FlatBorder {
                    return Ok(None);
                }
                let h = c.positive_hyperplane().expect("checked").clone();
                Ok(Some(ExoticInstance { template, covector: h.covector().to_vec(), offset: h.offset(), config: c }))
            })
            .collect();
        for f in found {
            out.extend(f?);
        }
    }
    Ok(out)
}

/// Subtype reported for a template instance, for cross-checking.
pub fn instance_subtype(instance: &ExoticInstance) -> ExoticSubtype {
    detect_exotic_subtype(&instance.config)
}
