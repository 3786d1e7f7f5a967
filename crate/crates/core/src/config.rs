use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{self, Hyperplane, LatticePoint};

/// A finite set of lattice points in the non-negative orthant of `Z^n`.
///
/// Points are kept sorted lexicographically. The affine dimension and, when
/// one exists, the positive supporting hyperplane are computed once at
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointConfig {
    ambient_dim: usize,
    points: Vec<LatticePoint>,
    affine_dim: usize,
    positive: Option<Hyperplane>,
}

impl PointConfig {
    /// Builds a configuration; repeated points are an error.
    pub fn new(ambient_dim: usize, mut points: Vec<LatticePoint>) -> Result<Self> {
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::CoincidentPoints);
        }
        Self::from_sorted(ambient_dim, points)
    }

    /// Builds a configuration with set semantics: repeated points collapse.
    pub fn from_set(ambient_dim: usize, mut points: Vec<LatticePoint>) -> Result<Self> {
        points.sort();
        points.dedup();
        Self::from_sorted(ambient_dim, points)
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_coords<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.first().ok_or(Error::EmptySet)?.as_ref().len();
        let points = rows.iter().map(|r| LatticePoint::new(r.as_ref().to_vec())).collect::<Result<Vec<_>>>()?;
        Self::new(n, points)
    }

    fn from_sorted(ambient_dim: usize, points: Vec<LatticePoint>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::ZeroAmbientDimension);
        }
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: p.dim() });
        }
        let affine_dim = lattice::affine_dim(&points)?;
        let positive = if affine_dim + 1 == ambient_dim {
            match lattice::positive_hyperplane_of_points(&points) {
                Ok(h) => Some(h),
                Err(Error::NotPositive { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        Ok(Self { ambient_dim, points, affine_dim, positive })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient_dim
    }

    /// The cached positive hyperplane, if the configuration spans a
    /// hyperplane with strictly positive covector.
    pub fn positive_hyperplane(&self) -> Option<&Hyperplane> {
        self.positive.as_ref()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Image under the coordinate permutation `x ↦ (x[perm[0]], …)`.
    pub fn permuted(&self, perm: &[usize]) -> Result<PointConfig> {
        let pts = self.points.iter().map(|p| p.permuted(perm)).collect();
        Self::new(self.ambient_dim, pts)
    }

    /// The configuration with `p` removed, if anything remains.
    pub fn without(&self, p: &LatticePoint) -> Result<PointConfig> {
        let rest = self.points.iter().filter(|q| *q != p).cloned().collect();
        Self::from_sorted(self.ambient_dim, rest)
    }

    pub fn to_coords(&self) -> Vec<Vec<i64>> {
        self.points.iter().map(|p| p.coords().to_vec()).collect()
    }
}

impl fmt::Debug for PointConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointConfig{:?}", self.points)
    }
}

impl fmt::Display for PointConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PointConfig {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.points.len()))?;
        for p in &self.points {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}
