//! Exact affine geometry over the integer lattice: points, primitive vectors,
//! hyperplanes, affine spans, lattice lengths and heights.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::config::PointConfig;
use crate::error::{Error, Result};
use crate::linalg;

/// A point of `Z^n` with non-negative coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if let Some(&value) = coords.iter().find(|&&x| x < 0) {
            return Err(Error::NegativeCoordinate { point: coords, value });
        }
        Ok(Self(coords))
    }

    /// The origin of `Z^n`.
    pub fn origin(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The point `c * e_axis`.
    pub fn on_axis(n: usize, axis: usize, c: i64) -> Result<Self> {
        let mut coords = vec![0; n];
        coords[axis] = c;
        Self::new(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// `self - other` as a lattice vector.
    pub fn sub(&self, other: &LatticePoint) -> Result<LatticeVector> {
        sub_coords(&self.0, &other.0).map(LatticeVector)
    }

    /// The unique nonzero axis if the point lies on a coordinate ray.
    pub fn ray_axis(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &x)| x != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    /// Coordinates reordered so that `result[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> LatticePoint {
        LatticePoint(perm.iter().map(|&j| self.0[j]).collect())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An integer vector, typically a difference of two lattice points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, p: &[i64]) -> Result<i64> {
        dot(&self.0, p)
    }
}

pub(crate) fn sub_coords(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y).ok_or(Error::Overflow)).collect()
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    let mut acc: i64 = 0;
    for (x, y) in a.iter().zip(b) {
        let term = x.checked_mul(*y).ok_or(Error::Overflow)?;
        acc = acc.checked_add(term).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

fn gcd_all(v: &[i64]) -> Result<i64> {
    let mut g: i64 = 0;
    for &x in v {
        if x == i64::MIN {
            return Err(Error::Overflow);
        }
        g = g.gcd(&x);
    }
    Ok(g)
}

/// Divides `v` by the gcd of its entries and flips the sign so that the first
/// nonzero entry is positive. Returns the primitive vector and the gcd.
pub fn primitive(v: &LatticeVector) -> Result<(LatticeVector, i64)> {
    let g = gcd_all(&v.0)?;
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    let lead = v.0.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    let sign = lead.signum();
    Ok((LatticeVector(v.0.iter().map(|&x| sign * (x / g)).collect()), g))
}

fn check_same_dim(points: &[LatticePoint]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptySet)?;
    let n = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
    }
    Ok(n)
}

fn differences(points: &[LatticePoint]) -> Result<Vec<Vec<i64>>> {
    let base = &points[0];
    points[1..].iter().map(|p| sub_coords(&p.0, &base.0)).collect()
}

/// Affine dimension of a nonempty point set: the rank of its difference
/// vectors.
pub fn affine_dim(points: &[LatticePoint]) -> Result<usize> {
    check_same_dim(points)?;
    linalg::rank(&differences(points)?)
}

/// Affine dimension of a point set given by references.
pub(crate) fn affine_dim_of(points: &[&LatticePoint]) -> Result<usize> {
    let base = points.first().ok_or(Error::EmptySet)?;
    let rows = points[1..].iter().map(|p| sub_coords(&p.0, &base.0)).collect::<Result<Vec<_>>>()?;
    linalg::rank(&rows)
}

/// Picks a maximal linearly independent subfamily of `vectors`, greedily in
/// order.
pub(crate) fn independent_subfamily(vectors: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    for v in vectors {
        chosen.push(v.clone());
        if linalg::rank(&chosen)? < chosen.len() {
            chosen.pop();
        }
    }
    Ok(chosen)
}

/// An affine hyperplane `covector · x = offset` with a primitive covector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    covector: Vec<i64>,
    offset: i64,
}

impl Hyperplane {
    /// Builds a hyperplane, rejecting zero or non-primitive covectors.
    pub fn new(covector: Vec<i64>, offset: i64) -> Result<Self> {
        let g = gcd_all(&covector)?;
        if g == 0 {
            return Err(Error::ZeroVector);
        }
        if g != 1 {
            return Err(Error::InvalidSubspace(format!("covector {covector:?} is not primitive")));
        }
        Ok(Self { covector, offset })
    }

    /// Canonical sign: offset non-negative, and when the offset is zero the
    /// first nonzero covector entry positive.
    fn normalized(mut covector: Vec<i64>, mut offset: i64) -> Self {
        let lead = covector.iter().find(|&&x| x != 0).copied().unwrap_or(1);
        if offset < 0 || (offset == 0 && lead < 0) {
            covector.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        Self { covector, offset }
    }

    pub fn covector(&self) -> &[i64] {
        &self.covector
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn ambient_dim(&self) -> usize {
        self.covector.len()
    }

    /// `covector · p - offset`.
    pub fn eval(&self, p: &[i64]) -> Result<i64> {
        dot(&self.covector, p)?.checked_sub(self.offset).ok_or(Error::Overflow)
    }

    pub fn contains(&self, p: &LatticePoint) -> Result<bool> {
        Ok(self.eval(p.coords())? == 0)
    }

    pub fn is_positive(&self) -> bool {
        self.covector.iter().all(|&a| a > 0)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} · x = {}", self.covector, self.offset)
    }
}

/// The unique primitive hyperplane through a point set of affine dimension
/// `n - 1`.
pub fn hyperplane_through(points: &[LatticePoint]) -> Result<Hyperplane> {
    let n = check_same_dim(points)?;
    let diffs = differences(points)?;
    let basis = independent_subfamily(&diffs)?;
    if basis.len() + 1 != n {
        return Err(Error::NotHyperplane { ambient_dim: n, affine_dim: basis.len() });
    }
    let normal = linalg::cofactor_normal(&basis, n)?;
    let (covector, _) = primitive(&LatticeVector(normal))?;
    let offset = covector.dot(points[0].coords())?;
    Ok(Hyperplane::normalized(covector.0, offset))
}

/// The positive-normal-covector certificate of a configuration: its
/// hyperplane, provided every covector entry is strictly positive.
pub fn positive_hyperplane_of(config: &PointConfig) -> Result<Hyperplane> {
    positive_hyperplane_of_points(config.points())
}

pub(crate) fn positive_hyperplane_of_points(points: &[LatticePoint]) -> Result<Hyperplane> {
    let h = hyperplane_through(points)?;
    if !h.is_positive() {
        return Err(Error::NotPositive { covector: h.covector, offset: h.offset });
    }
    Ok(h)
}

/// `|a · p - b|` for a primitive hyperplane `a · x = b`.
pub fn lattice_height(p: &LatticePoint, h: &Hyperplane) -> Result<i64> {
    h.eval(p.coords())?.checked_abs().ok_or(Error::Overflow)
}

/// Number of primitive lattice steps on the segment `[p, q]`.
pub fn lattice_length(p: &LatticePoint, q: &LatticePoint) -> Result<i64> {
    let d = q.sub(p)?;
    match gcd_all(&d.0)? {
        0 => Err(Error::CoincidentPoints),
        g => Ok(g),
    }
}

/// Whether the origin lies in the affine span of `points`.
pub fn span_contains_origin(points: &[LatticePoint]) -> Result<bool> {
    let n = check_same_dim(points)?;
    // The origin is in the affine span iff the linear span of the points has
    // the same dimension as their affine span.
    let rows: Vec<Vec<i64>> = points.iter().map(|p| p.0.clone()).collect();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    Ok(linalg::rank(&rows)? == affine_dim(points)?)
}

/// Clears denominators of a rational vector: returns integer `v` and `d > 0`
/// with `v / d` equal to the input.
pub(crate) fn clear_denominators(x: &[Rational64]) -> Result<(Vec<i64>, i64)> {
    let mut d: i64 = 1;
    for r in x {
        d = d.lcm(r.denom());
        if d <= 0 {
            return Err(Error::Overflow);
        }
    }
    let v = x.iter().map(|r| r.numer().checked_mul(d / r.denom()).ok_or(Error::Overflow)).collect::<Result<_>>()?;
    Ok((v, d))
}

/// An affine subspace of `Q^n` given by a rational base point and linearly
/// independent integer directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpan {
    base: Vec<Rational64>,
    directions: Vec<LatticeVector>,
}

impl AffineSpan {
    pub fn new(base: Vec<Rational64>, directions: Vec<LatticeVector>) -> Result<Self> {
        let n = base.len();
        if let Some(d) = directions.iter().find(|d| d.0.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: d.0.len() });
        }
        let rows: Vec<Vec<i64>> = directions.iter().map(|d| d.0.clone()).collect();
        if linalg::rank(&rows)? != rows.len() {
            return Err(Error::InvalidSubspace("directions are linearly dependent".into()));
        }
        Ok(Self { base, directions })
    }

    /// The affine span of a nonempty point set.
    pub fn of_points(points: &[LatticePoint]) -> Result<Self> {
        check_same_dim(points)?;
        let directions = independent_subfamily(&differences(points)?)?;
        Ok(Self {
            base: points[0].0.iter().map(|&x| Rational64::from_integer(x)).collect(),
            directions: directions.into_iter().map(LatticeVector).collect(),
        })
    }

    pub fn base(&self) -> &[Rational64] {
        &self.base
    }

    pub fn directions(&self) -> &[LatticeVector] {
        &self.directions
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn contains_rational(&self, x: &[Rational64]) -> Result<bool> {
        if x.len() != self.ambient_dim() {
            return Ok(false);
        }
        let diff: Vec<Rational64> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let (w, _) = clear_denominators(&diff)?;
        let mut rows: Vec<Vec<i64>> = self.directions.iter().map(|d| d.0.clone()).collect();
        rows.push(w);
        Ok(linalg::rank(&rows)? == self.dim())
    }

    pub fn contains(&self, p: &LatticePoint) -> Result<bool> {
        let x: Vec<Rational64> = p.0.iter().map(|&v| Rational64::from_integer(v)).collect();
        self.contains_rational(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec()).unwrap()
    }

    fn pts(list: &[&[i64]]) -> Vec<LatticePoint> {
        list.iter().map(|c| pt(c)).collect()
    }

    pub(crate) fn cross_polytope() -> Vec<LatticePoint> {
        pts(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]])
    }

    #[test]
    fn primitive_examples() {
        let p = |v: &[i64]| primitive(&LatticeVector(v.to_vec())).unwrap();
        assert_eq!(p(&[2, 4, 0, 6]), (LatticeVector(vec![1, 2, 0, 3]), 2));
        assert_eq!(p(&[0, 0, 1, 0]), (LatticeVector(vec![0, 0, 1, 0]), 1));
        assert_eq!(p(&[-3, 3, 0, 0]), (LatticeVector(vec![1, -1, 0, 0]), 3));
        assert_eq!(primitive(&LatticeVector(vec![0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn affine_dim_examples() {
        assert_eq!(affine_dim(&pts(&[&[3, 1, 0, 0]])).unwrap(), 0);
        assert_eq!(affine_dim(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap(), 2);
        assert_eq!(affine_dim(&cross_polytope()).unwrap(), 3);
        assert_eq!(affine_dim(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn hyperplane_examples() {
        let h = hyperplane_through(&cross_polytope()).unwrap();
        assert_eq!((h.covector(), h.offset()), (&[1, 1, 1, 1][..], 2));
        let example = pts(&[&[0, 0, 0, 5], &[0, 0, 1, 4], &[1, 1, 0, 3], &[1, 0, 2, 2], &[0, 1, 2, 2]]);
        let h = hyperplane_through(&example).unwrap();
        assert_eq!((h.covector(), h.offset()), (&[1, 1, 1, 1][..], 5));
        let h = hyperplane_through(&pts(&[&[0, 0], &[1, 1]])).unwrap();
        assert_eq!((h.covector(), h.offset()), (&[1, -1][..], 0));
        assert!(matches!(hyperplane_through(&pts(&[&[0, 0, 0], &[1, 1, 1]])), Err(Error::NotHyperplane { .. })));
    }

    #[test]
    fn offset_sign_convention() {
        // x - y = -1 is stored as -x + y = 1
        let h = hyperplane_through(&pts(&[&[0, 1], &[1, 2]])).unwrap();
        assert_eq!((h.covector(), h.offset()), (&[-1, 1][..], 1));
    }

    #[test]
    fn positive_hyperplane_examples() {
        let unit = pts(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        let h = positive_hyperplane_of_points(&unit).unwrap();
        assert_eq!((h.covector(), h.offset()), (&[1, 1, 1, 1][..], 1));
        assert!(positive_hyperplane_of_points(&cross_polytope()).is_ok());
        assert!(matches!(positive_hyperplane_of_points(&pts(&[&[0, 0], &[1, 1]])), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn heights_and_lengths() {
        let h = Hyperplane::new(vec![1, 1, 1, 1], 2).unwrap();
        assert_eq!(lattice_height(&pt(&[0, 0, 1, 1]), &h).unwrap(), 0);
        assert_eq!(lattice_height(&pt(&[2, 2, 0, 0]), &h).unwrap(), 2);
        let x3 = Hyperplane::new(vec![0, 0, 1, 0], 0).unwrap();
        assert_eq!(lattice_height(&pt(&[1, 0, 0, 0]), &x3).unwrap(), 0);
        assert_eq!(lattice_height(&pt(&[0, 0, 1, 0]), &x3).unwrap(), 1);

        assert_eq!(lattice_length(&pt(&[0, 0]), &pt(&[2, 0])).unwrap(), 2);
        assert_eq!(lattice_length(&pt(&[0, 0, 0]), &pt(&[1, 1, 0])).unwrap(), 1);
        assert_eq!(lattice_length(&pt(&[2, 4]), &pt(&[0, 0])).unwrap(), 2);
        assert_eq!(lattice_length(&pt(&[2, 4]), &pt(&[2, 4])), Err(Error::CoincidentPoints));
    }

    #[test]
    fn origin_in_span() {
        assert!(span_contains_origin(&pts(&[&[1, 0], &[2, 0]])).unwrap());
        assert!(!span_contains_origin(&pts(&[&[0, 1], &[1, 1]])).unwrap());
        assert!(!span_contains_origin(&pts(&[&[1, 1, 0, 3], &[1, 0, 2, 2], &[0, 1, 2, 2]])).unwrap());
        assert!(span_contains_origin(&pts(&[&[0, 0, 0]])).unwrap());
    }

    #[test]
    fn negative_coordinates_rejected() {
        assert!(matches!(LatticePoint::new(vec![1, -1]), Err(Error::NegativeCoordinate { .. })));
    }

    #[test]
    fn affine_span_membership() {
        let span = AffineSpan::of_points(&pts(&[&[0, 0, 2], &[1, 0, 1]])).unwrap();
        assert_eq!(span.dim(), 1);
        assert!(span.contains(&pt(&[2, 0, 0])).unwrap());
        assert!(!span.contains(&pt(&[0, 1, 1])).unwrap());
        let half = [Rational64::new(1, 2), Rational64::from_integer(0), Rational64::new(3, 2)];
        assert!(span.contains_rational(&half).unwrap());
    }
}
