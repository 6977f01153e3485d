//! Support, gauge, polarity, difference bodies, and linear images.

use num_traits::{One, Signed, Zero};

use super::Body;
use crate::exact::{self, Int, QMatrix, QVector, Rational};
use crate::{Error, Result};

impl Body {
    /// Support value `h_K(u) = max_{x in K} <u, x>`, exact for polytopes.
    /// Balls have irrational support in general; use [`Body::support_floor`]
    /// or [`Body::support_le`] for exact ball queries.
    pub fn support(&self, u: &QVector) -> Result<Rational> {
        match self {
            Body::Empty(_) => Err(Error::EmptyBody),
            Body::Ball(_) => Err(Error::NotPolytope),
            Body::Polytope(p) => Ok(p
                .vertices()
                .iter()
                .map(|v| u.dot(v))
                .max()
                .expect("polytope has vertices")),
        }
    }

    /// `floor(h_K(u))`, exact for polytopes and balls.
    pub fn support_floor(&self, u: &QVector) -> Result<Int> {
        match self {
            Body::Empty(_) => Err(Error::EmptyBody),
            Body::Polytope(_) => Ok(exact::floor_int(&self.support(u)?)),
            Body::Ball(b) => exact::sqrt_floor(&(&b.radius_sq * u.norm_sq())),
        }
    }

    /// Exact predicate `h_K(u) <= bound`.
    pub fn support_le(&self, u: &QVector, bound: &Rational) -> Result<bool> {
        match self {
            Body::Empty(_) => Err(Error::EmptyBody),
            Body::Polytope(_) => Ok(&self.support(u)? <= bound),
            Body::Ball(b) => {
                // h_K(u) = |u| r >= 0, so a negative bound never holds
                if bound.is_negative() {
                    return Ok(false);
                }
                Ok(&b.radius_sq * u.norm_sq() <= bound * bound)
            }
        }
    }

    /// Gauge (Minkowski functional) `|x|_K = min { m >= 0 : x in m K }`.
    /// Requires the origin interior; exact for polytopes only.
    pub fn gauge(&self, x: &QVector) -> Result<Rational> {
        match self {
            Body::Empty(_) => Err(Error::EmptyBody),
            Body::Ball(_) => Err(Error::NotPolytope),
            Body::Polytope(p) => {
                if !p.origin_interior() {
                    return Err(Error::OriginNotInterior);
                }
                let mut best = Rational::zero();
                for (a, b) in p.facets() {
                    let v = a.dot(x) / b;
                    if v > best {
                        best = v;
                    }
                }
                Ok(best)
            }
        }
    }

    /// Polar body `K* = { y : <x, y> <= 1 for all x in K }`.
    pub fn polar(&self) -> Result<Body> {
        match self {
            Body::Empty(_) => Err(Error::EmptyBody),
            Body::Ball(b) => Body::ball(b.ambient, b.radius_sq.recip()),
            Body::Polytope(p) => {
                if !p.origin_interior() {
                    return Err(Error::OriginNotInterior);
                }
                // the polar's H-form is immediate: one row per vertex of K
                let rows = p
                    .vertices()
                    .iter()
                    .map(|v| (v.clone(), Rational::one()))
                    .collect();
                Body::from_halfspaces(p.ambient(), rows)
            }
        }
    }

    /// Difference body `K - K`; origin symmetric by construction.
    pub fn difference_body(&self) -> Result<Body> {
        let p = self.as_polytope()?;
        if p.symmetry().origin_symmetric {
            return self.dilate(&exact::rint(2));
        }
        let mut pts = Vec::with_capacity(p.vertices().len() * p.vertices().len());
        for v in p.vertices() {
            for w in p.vertices() {
                pts.push(v.sub(w));
            }
        }
        Body::from_vertices(p.ambient(), pts)
    }

    /// Affine image `A K + t` for a regular matrix `A`.
    pub fn linear_image(&self, a: &QMatrix, t: &QVector) -> Result<Body> {
        let p = self.as_polytope()?;
        if a.n_rows() != p.ambient() || a.n_cols() != p.ambient() {
            return Err(Error::DimensionMismatch {
                expected: p.ambient(),
                got: a.n_rows(),
            });
        }
        if a.determinant()?.is_zero() {
            return Err(Error::NotIndependent);
        }
        let verts = p.vertices().iter().map(|v| a.matvec(v).add(t)).collect();
        Body::from_vertices(p.ambient(), verts)
    }

    /// Reflection `-K`.
    pub fn reflect(&self) -> Result<Body> {
        match self {
            Body::Empty(n) => Ok(Body::Empty(*n)),
            Body::Ball(b) => Ok(Body::Ball(b.clone())),
            Body::Polytope(p) => {
                Body::from_vertices(p.ambient(), p.vertices().iter().map(QVector::neg).collect())
            }
        }
    }
}
