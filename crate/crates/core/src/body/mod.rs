//! Convex bodies: polytopes in exact V- and H-representation, centered
//! balls with rational squared radius, and the geometric operations the
//! counting layer builds on (support, gauge, polar, images, slices,
//! projections, volume).

mod convert;
mod ops;
mod section;
mod volume;

pub use section::{project, slice, Projection, Slice, SliceChart};

use std::collections::BTreeSet;

use num_traits::Signed;

use crate::exact::{QMatrix, QVector, Rational};
use crate::{Error, Result};

/// Default cap for brute-force facet/vertex enumeration; override through
/// the `*_with_cap` constructors.
pub const DEFAULT_DIM_CAP: usize = 6;

/// Symmetry classification, verified on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryTag {
    pub origin_symmetric: bool,
    pub unconditional: bool,
}

/// Centered Euclidean ball with rational squared radius. Only membership
/// style predicates are exact for balls, which is all the counting paths
/// need; see the `ops` module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallSq {
    pub ambient: usize,
    pub radius_sq: Rational,
}

/// Canonicalized convex polytope.
///
/// `vertices` is the exact vertex set, lexicographically sorted. `facets`
/// are inequality rows `a . x <= b` with primitive integer normals, valid
/// within the affine hull; `equalities` describe the hull itself and are
/// empty iff the body is full dimensional. `chart` lists coordinate
/// indices onto which the hull projects bijectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient: usize,
    dim: usize,
    vertices: Vec<QVector>,
    facets: Vec<(QVector, Rational)>,
    equalities: Vec<(QVector, Rational)>,
    chart: Vec<usize>,
    symmetry: SymmetryTag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Polytope(Polytope),
    Ball(BallSq),
    /// Marker for an empty intersection (e.g. a slice missing the body).
    Empty(usize),
}

impl Polytope {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[(QVector, Rational)] {
        &self.facets
    }

    pub fn equalities(&self) -> &[(QVector, Rational)] {
        &self.equalities
    }

    pub fn chart(&self) -> &[usize] {
        &self.chart
    }

    pub fn symmetry(&self) -> SymmetryTag {
        self.symmetry
    }

    pub fn is_full_dim(&self) -> bool {
        self.dim == self.ambient
    }

    /// All inequality rows cutting out the body: facets plus both
    /// directions of every hull equation.
    pub fn inequality_rows(&self) -> Vec<(QVector, Rational)> {
        let mut rows = self.facets.clone();
        for (a, b) in &self.equalities {
            rows.push((a.clone(), b.clone()));
            rows.push((a.neg(), -b));
        }
        rows
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.equalities.iter().all(|(a, b)| &a.dot(x) == b)
            && self.facets.iter().all(|(a, b)| &a.dot(x) <= b)
    }

    /// The origin is interior iff the body is full dimensional and every
    /// facet has positive offset.
    pub fn origin_interior(&self) -> bool {
        self.is_full_dim() && self.facets.iter().all(|(_, b)| b.is_positive())
    }
}

impl Body {
    pub fn ambient(&self) -> usize {
        match self {
            Body::Polytope(p) => p.ambient,
            Body::Ball(b) => b.ambient,
            Body::Empty(n) => *n,
        }
    }

    /// Intrinsic dimension; `None` for the empty body.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Body::Polytope(p) => Some(p.dim),
            Body::Ball(b) => Some(b.ambient),
            Body::Empty(_) => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Body::Empty(_))
    }

    pub fn as_polytope(&self) -> Result<&Polytope> {
        match self {
            Body::Polytope(p) => Ok(p),
            _ => Err(Error::NotPolytope),
        }
    }

    pub fn symmetry(&self) -> SymmetryTag {
        match self {
            Body::Polytope(p) => p.symmetry,
            Body::Ball(_) => SymmetryTag {
                origin_symmetric: true,
                unconditional: true,
            },
            Body::Empty(_) => SymmetryTag {
                origin_symmetric: false,
                unconditional: false,
            },
        }
    }

    pub fn contains(&self, x: &QVector) -> bool {
        match self {
            Body::Polytope(p) => p.contains(x),
            Body::Ball(b) => x.norm_sq() <= b.radius_sq,
            Body::Empty(_) => false,
        }
    }

    pub fn ball(ambient: usize, radius_sq: Rational) -> Result<Body> {
        if !radius_sq.is_positive() {
            return Err(Error::InvalidParam("ball radius_sq must be positive".into()));
        }
        Ok(Body::Ball(BallSq { ambient, radius_sq }))
    }

    pub fn from_vertices(ambient: usize, points: Vec<QVector>) -> Result<Body> {
        Self::from_vertices_with_cap(ambient, points, DEFAULT_DIM_CAP)
    }

    pub fn from_vertices_with_cap(
        ambient: usize,
        points: Vec<QVector>,
        cap: usize,
    ) -> Result<Body> {
        for p in &points {
            if p.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: p.dim(),
                });
            }
        }
        let set: BTreeSet<QVector> = points.into_iter().collect();
        if set.is_empty() {
            return Ok(Body::Empty(ambient));
        }
        let pts: Vec<QVector> = set.into_iter().collect();
        convert::canonicalize_from_points(ambient, pts, cap).map(Body::Polytope)
    }

    pub fn from_halfspaces(ambient: usize, rows: Vec<(QVector, Rational)>) -> Result<Body> {
        Self::from_halfspaces_with_cap(ambient, rows, DEFAULT_DIM_CAP)
    }

    pub fn from_halfspaces_with_cap(
        ambient: usize,
        rows: Vec<(QVector, Rational)>,
        cap: usize,
    ) -> Result<Body> {
        for (a, _) in &rows {
            if a.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: a.dim(),
                });
            }
        }
        if ambient > cap {
            return Err(Error::DimensionCap { dim: ambient, cap });
        }
        if convert::has_recession_direction(ambient, &rows) {
            return Err(Error::Unbounded);
        }
        // bounded: non-empty iff a vertex exists
        let verts = convert::enumerate_vertices(ambient, &rows)?;
        if verts.is_empty() {
            return Ok(Body::Empty(ambient));
        }
        // full-dimensional bodies canonicalize directly from the given rows;
        // lower-dimensional ones go through the hull machinery
        let base = &verts[0];
        let dirs = QMatrix::from_rows(verts.iter().map(|p| p.sub(base)).collect());
        if dirs.rank() == ambient {
            return convert::canonicalize_from_rows(ambient, verts, &rows).map(Body::Polytope);
        }
        Self::from_vertices_with_cap(ambient, verts, cap)
    }

    /// Scale about the origin by a positive rational factor.
    pub fn dilate(&self, factor: &Rational) -> Result<Body> {
        if !factor.is_positive() {
            return Err(Error::InvalidParam("dilation factor must be positive".into()));
        }
        Ok(match self {
            Body::Empty(n) => Body::Empty(*n),
            Body::Ball(b) => Body::Ball(BallSq {
                ambient: b.ambient,
                radius_sq: &b.radius_sq * factor * factor,
            }),
            Body::Polytope(p) => {
                let mut q = p.clone();
                q.vertices = p.vertices.iter().map(|v| v.scale(factor)).collect();
                q.facets = p.facets.iter().map(|(a, b)| (a.clone(), b * factor)).collect();
                q.equalities = p
                    .equalities
                    .iter()
                    .map(|(a, b)| (a.clone(), b * factor))
                    .collect();
                Body::Polytope(q)
            }
        })
    }

    /// Translate a polytope; symmetry tags are re-derived from the moved
    /// vertex set.
    pub fn translate(&self, t: &QVector) -> Result<Body> {
        match self {
            Body::Empty(n) => Ok(Body::Empty(*n)),
            Body::Ball(_) => Err(Error::NotPolytope),
            Body::Polytope(p) => {
                let mut q = p.clone();
                q.vertices = p.vertices.iter().map(|v| v.add(t)).collect();
                q.facets = p
                    .facets
                    .iter()
                    .map(|(a, b)| (a.clone(), b + a.dot(t)))
                    .collect();
                q.equalities = p
                    .equalities
                    .iter()
                    .map(|(a, b)| (a.clone(), b + a.dot(t)))
                    .collect();
                q.symmetry = convert::symmetry_of(&q.vertices);
                Ok(Body::Polytope(q))
            }
        }
    }
}

/// Convenience: build the H-row matrix pair `(A, b)` of a polytope.
pub fn h_matrix(p: &Polytope) -> (QMatrix, QVector) {
    let rows = p.inequality_rows();
    let a = QMatrix::from_rows(rows.iter().map(|(a, _)| a.clone()).collect());
    let b = QVector::new(rows.iter().map(|(_, b)| b.clone()).collect());
    (a, b)
}
