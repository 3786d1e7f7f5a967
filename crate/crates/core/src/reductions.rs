//! Dimension reductions: projection along a coordinate subspace and the
//! marked section of a facet by an affine subspace.

use std::fmt;

use num_rational::Rational64;

use crate::config::PointConfig;
use crate::error::{Error, Result};
use crate::faces::{facets_of, Face};
use crate::lattice::{self, clear_denominators, AffineSpan, LatticePoint, LatticeVector};
use crate::linalg;
use crate::predicates::{facet_hyperplane, is_b_face, MarkedPolytope};

/// A coordinate subspace `E`, stored as sorted 0-based axis indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordinateSubspace {
    axes: Vec<usize>,
    ambient_dim: usize,
}

impl CoordinateSubspace {
    pub fn new(mut axes: Vec<usize>, ambient_dim: usize) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidSubspace("no axes".into()));
        }
        axes.sort_unstable();
        if axes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubspace(format!("repeated axis in {axes:?}")));
        }
        if let Some(&a) = axes.iter().find(|&&a| a >= ambient_dim) {
            return Err(Error::InvalidSubspace(format!("axis {a} out of range for dimension {ambient_dim}")));
        }
        Ok(Self { axes, ambient_dim })
    }

    /// The coordinate ray through `e_axis`.
    pub fn ray(axis: usize, ambient_dim: usize) -> Result<Self> {
        Self::new(vec![axis], ambient_dim)
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn contains_axis(&self, i: usize) -> bool {
        self.axes.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|&i| !self.contains_axis(i)).collect()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.complement().iter().all(|&i| p.coords()[i] == 0)
    }

    /// All nonempty proper coordinate subspaces of `Z^n`, ordered by
    /// dimension then axes.
    pub fn all_proper(ambient_dim: usize) -> Vec<CoordinateSubspace> {
        let mut out: Vec<CoordinateSubspace> = (1u32..(1 << ambient_dim) - 1)
            .map(|mask| CoordinateSubspace {
                axes: (0..ambient_dim).filter(|i| mask >> i & 1 == 1).collect(),
                ambient_dim,
            })
            .collect();
        out.sort_by(|a, b| (a.dim(), &a.axes).cmp(&(b.dim(), &b.axes)));
        out
    }
}

impl fmt::Display for CoordinateSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ox")?;
        for (k, a) in self.axes.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "{}", a + 1)?;
        }
        Ok(())
    }
}

/// Projection along `E`: deletes the coordinates in `E`, collapsing repeated
/// images.
pub fn project(config: &PointConfig, e: &CoordinateSubspace) -> Result<PointConfig> {
    if e.ambient_dim() != config.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: config.ambient_dim(), found: e.ambient_dim() });
    }
    let keep = e.complement();
    if keep.is_empty() {
        return Err(Error::InvalidSubspace("cannot project along every axis".into()));
    }
    let images = config
        .points()
        .iter()
        .map(|p| LatticePoint::new(keep.iter().map(|&i| p.coords()[i]).collect()))
        .collect::<Result<Vec<_>>>()?;
    PointConfig::from_set(keep.len(), images)
}

/// `config ∩ E` as a face, or `None` when empty. Its support functional is
/// minus the sum of the coordinates outside `E`.
pub fn face_in_subspace(config: &PointConfig, e: &CoordinateSubspace) -> Result<Option<Face>> {
    let members: Vec<LatticePoint> = config.points().iter().filter(|p| e.contains(p)).cloned().collect();
    if members.is_empty() {
        return Ok(None);
    }
    let mut support = vec![0; config.ambient_dim()];
    for i in e.complement() {
        support[i] = -1;
    }
    let dim = lattice::affine_dim(&members)?;
    Ok(Some(Face::from_parts(members, LatticeVector(support), dim)))
}

/// The shared hypothesis of the projection and section reductions: `τ ∩ E`
/// is a V-face spanning `E`'s slice of the facet hyperplane (dimension
/// `dim E - 1`) and is not a B-face. Returns that face.
pub fn reduction_hypothesis(config: &PointConfig, e: &CoordinateSubspace) -> Result<Face> {
    let face = face_in_subspace(config, e)?
        .ok_or_else(|| Error::HypothesisViolated(format!("{e} misses the configuration")))?;
    if face.dim() + 1 != e.dim() {
        return Err(Error::HypothesisViolated(format!(
            "intersection with {e} has dimension {}, not {}",
            face.dim(),
            e.dim() - 1
        )));
    }
    if is_b_face(config, &face)? {
        return Err(Error::HypothesisViolated(format!("intersection with {e} is a B-face")));
    }
    Ok(face)
}

/// Vertices `(b / a_i) e_i` of the simplex cut from the orthant by the
/// positive hyperplane `a · x = b` of `config`.
pub fn delta_simplex(config: &PointConfig) -> Result<Vec<Vec<Rational64>>> {
    let h = facet_hyperplane(config)?;
    if h.offset() <= 0 {
        return Err(Error::NotPositive { covector: h.covector().to_vec(), offset: h.offset() });
    }
    let n = config.ambient_dim();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(
                    |j| {
                        if i == j {
                            Rational64::new(h.offset(), h.covector()[i])
                        } else {
                            Rational64::from_integer(0)
                        }
                    },
                )
                .collect()
        })
        .collect())
}

/// How the section subspace `H` is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionPlane {
    /// `E` is the ray of this configuration point and `H` is the affine span
    /// of the remaining points.
    Apex(LatticePoint),
    /// An explicitly supplied `H`.
    Explicit(AffineSpan),
}

/// Lattice coordinates on an affine subspace: `x = origin + Σ c_k basis_k`
/// with `basis` a Hermite-reduced basis of the saturated direction lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeChart {
    origin: Vec<i64>,
    basis: Vec<Vec<i64>>,
}

impl LatticeChart {
    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Chart coordinates of a lattice point of the subspace.
    pub fn to_chart(&self, p: &[i64]) -> Result<Option<Vec<i64>>> {
        let v = lattice::sub_coords(p, &self.origin)?;
        linalg::solve_in_hnf(&self.basis, &v)
    }

    pub fn from_chart(&self, c: &[i64]) -> Result<Vec<i64>> {
        let mut x = self.origin.clone();
        for (coef, b) in c.iter().zip(&self.basis) {
            for (slot, &bj) in x.iter_mut().zip(b) {
                let t = coef.checked_mul(bj).ok_or(Error::Overflow)?;
                *slot = slot.checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(x)
    }

    /// Whether the subspace has a lattice point with `x_axis = value`.
    pub fn attains(&self, axis: usize, value: i64) -> bool {
        let g = self.basis.iter().fold(0i64, |g, b| num_integer::gcd(g, b[axis]));
        let gap = value - self.origin[axis];
        if g == 0 {
            gap == 0
        } else {
            gap % g == 0
        }
    }
}

/// The marked polytope `τ_H` produced by a section, with its chart and the
/// original points it came from.
#[derive(Clone, Debug)]
pub struct Section {
    pub polytope: MarkedPolytope,
    pub chart: LatticeChart,
    /// `τ ∩ H` in ambient coordinates.
    pub members: Vec<LatticePoint>,
    pub subspace: AffineSpan,
}

impl Section {
    /// Whether every point of `τ` outside `E` lies in `H`.
    pub fn covers_complement(&self, config: &PointConfig, e: &CoordinateSubspace) -> bool {
        config.points().iter().filter(|p| !e.contains(p)).all(|p| self.members.binary_search(p).is_ok())
    }
}

fn rational_point(p: &LatticePoint) -> Vec<Rational64> {
    p.coords().iter().map(|&x| Rational64::from_integer(x)).collect()
}

/// Section of a facet candidate by `H`, marked on the traces of the
/// coordinate hyperplanes `{x_i = 0} ⊇ E` for which `H` meets the lattice
/// at `x_i = 1`.
pub fn section_marked(config: &PointConfig, e: &CoordinateSubspace, plane: &SectionPlane) -> Result<Section> {
    let n = config.ambient_dim();
    let h = facet_hyperplane(config)?.clone();
    let delta = delta_simplex(config)?;
    reduction_hypothesis(config, e)?;

    let span = match plane {
        SectionPlane::Apex(apex) => {
            if !config.contains(apex) {
                return Err(Error::HypothesisViolated(format!("apex {apex} is not in the configuration")));
            }
            match apex.ray_axis() {
                Some(axis) if e.axes() == [axis] => {}
                _ => {
                    return Err(Error::HypothesisViolated(format!("apex {apex} does not span {e}")));
                }
            }
            let rest = config.without(apex)?;
            AffineSpan::of_points(rest.points())?
        }
        SectionPlane::Explicit(span) => span.clone(),
    };
    if span.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: span.ambient_dim() });
    }
    let m = n - 1 - e.dim();
    if span.dim() != m {
        return Err(Error::HypothesisViolated(format!("section subspace has dimension {}, expected {m}", span.dim())));
    }
    if m == 0 {
        return Err(Error::Unsupported("zero-dimensional sections".into()));
    }

    // H ⊂ aff(Δ), and aff(H ∪ (E ∩ Δ)) = aff(Δ).
    let (base, base_den) = clear_denominators(span.base())?;
    let lhs = lattice::dot(h.covector(), &base)?;
    if lhs != h.offset().checked_mul(base_den).ok_or(Error::Overflow)?
        || span.directions().iter().any(|d| d.dot(h.covector()) != Ok(0))
    {
        return Err(Error::HypothesisViolated("section subspace leaves the facet hyperplane".into()));
    }
    let mut rows: Vec<Vec<i64>> = span.directions().iter().map(|d| d.0.clone()).collect();
    let e_vertices: Vec<&Vec<Rational64>> = e.axes().iter().map(|&i| &delta[i]).collect();
    for v in &e_vertices[1..] {
        let diff: Vec<Rational64> = v.iter().zip(e_vertices[0]).map(|(a, b)| a - b).collect();
        rows.push(clear_denominators(&diff)?.0);
    }
    let diff: Vec<Rational64> = e_vertices[0].iter().zip(span.base()).map(|(a, b)| a - b).collect();
    rows.push(clear_denominators(&diff)?.0);
    if linalg::rank(&rows)? + 1 != n {
        return Err(Error::HypothesisViolated("H and E ∩ Δ do not span the facet hyperplane".into()));
    }

    let mut members = Vec::new();
    for p in config.points() {
        if span.contains_rational(&rational_point(p))? {
            members.push(p.clone());
        }
    }
    if members.is_empty() || lattice::affine_dim(&members)? != m {
        return Err(Error::HypothesisViolated(format!("τ ∩ H does not have dimension {m}")));
    }

    let directions: Vec<Vec<i64>> = span.directions().iter().map(|d| d.0.clone()).collect();
    let basis = linalg::saturate(&directions, n)?;
    let mut chart = LatticeChart { origin: members[0].coords().to_vec(), basis };
    let mut coords = Vec::with_capacity(members.len());
    for p in &members {
        let c = chart.to_chart(p.coords())?.expect("lattice points of H lie in the saturated lattice");
        coords.push(c);
    }
    // Translate the chart so that every coordinate is non-negative with
    // minimum zero.
    let shift: Vec<i64> = (0..m).map(|k| coords.iter().map(|c| c[k]).min().unwrap_or(0)).collect();
    chart.origin = chart.from_chart(&shift)?;
    let charted = coords
        .iter()
        .map(|c| {
            let shifted = c.iter().zip(&shift).map(|(x, s)| x - s).collect();
            LatticePoint::new(shifted)
        })
        .collect::<Result<Vec<_>>>()?;
    let image = PointConfig::new(m, charted.clone())?;

    let mut marked: Vec<Vec<LatticePoint>> = Vec::new();
    let facets = facets_of(&image)?;
    for i in e.complement() {
        let mut trace: Vec<LatticePoint> =
            members.iter().zip(&charted).filter(|(p, _)| p.coords()[i] == 0).map(|(_, c)| c.clone()).collect();
        trace.sort();
        if trace.is_empty() || !chart.attains(i, 1) {
            continue;
        }
        if facets.iter().any(|f| f.members() == trace.as_slice()) && !marked.contains(&trace) {
            marked.push(trace);
        }
    }
    let polytope = MarkedPolytope::new(image, &marked)?;
    Ok(Section { polytope, chart, members, subspace: span })
}

/// Section of a pyramid whose apex lies on a coordinate ray: `E` is that ray
/// and `H` is the span of the base.
pub fn section_from_apex(config: &PointConfig, apex: &LatticePoint) -> Result<Section> {
    let axis =
        apex.ray_axis().ok_or_else(|| Error::HypothesisViolated(format!("{apex} is not on a coordinate ray")))?;
    let e = CoordinateSubspace::ray(axis, config.ambient_dim())?;
    section_marked(config, &e, &SectionPlane::Apex(apex.clone()))
}

/// Points of `config` on coordinate rays whose removal leaves a
/// configuration of dimension `n - 2`; these are the apexes for which
/// [`section_from_apex`] applies.
pub fn ray_apexes(config: &PointConfig) -> Result<Vec<LatticePoint>> {
    let n = config.ambient_dim();
    let mut out = Vec::new();
    for p in config.points() {
        if p.ray_axis().is_none() || config.len() < 2 {
            continue;
        }
        let rest = config.without(p)?;
        if rest.affine_dim() + 2 == n && config.affine_dim() + 1 == n {
            out.push(p.clone());
        }
    }
    Ok(out)
}
