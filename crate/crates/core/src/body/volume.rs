//! Exact volume and centroid by recursive triangulation from a vertex.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{Body, Polytope};
use crate::exact::{rat_of, Int, QMatrix, QVector, Rational};
use crate::Result;

fn factorial(n: usize) -> Int {
    let mut f = Int::one();
    for i in 2..=n {
        f *= Int::from(i as i64);
    }
    f
}

/// Triangulation of a polytope as vertex index tuples of length `dim + 1`.
/// Cones every facet triangulation away from vertex 0.
fn triangulate(p: &Polytope) -> Vec<Vec<usize>> {
    match p.dim() {
        0 => vec![vec![0]],
        1 => vec![vec![0, p.vertices().len() - 1]],
        _ => {
            let apex = 0usize;
            let apex_pt = &p.vertices()[apex];
            let mut simplices = Vec::new();
            for (a, b) in p.facets() {
                if &a.dot(apex_pt) == b {
                    continue; // apex on this facet; cone is degenerate
                }
                let incident: Vec<usize> = p
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| &a.dot(v) == b)
                    .map(|(i, _)| i)
                    .collect();
                let facet_pts: Vec<QVector> =
                    incident.iter().map(|&i| p.vertices()[i].clone()).collect();
                let facet_body = Body::from_vertices(p.ambient(), facet_pts)
                    .expect("facet vertex set is non-empty");
                let fp = facet_body.as_polytope().expect("facet is a polytope");
                debug_assert_eq!(fp.dim() + 1, p.dim());
                // canonical facet vertices are a permutation of the incident set
                let lookup: BTreeMap<&QVector, usize> = incident
                    .iter()
                    .map(|&i| (&p.vertices()[i], i))
                    .collect();
                for simplex in triangulate(fp) {
                    let mut cone = vec![apex];
                    for si in simplex {
                        cone.push(lookup[&fp.vertices()[si]]);
                    }
                    simplices.push(cone);
                }
            }
            simplices
        }
    }
}

fn simplex_volume(p: &Polytope, simplex: &[usize]) -> Rational {
    let d = p.dim();
    if d == 0 {
        return Rational::one();
    }
    let chart = p.chart();
    let base = &p.vertices()[simplex[0]];
    let rows: Vec<QVector> = simplex[1..]
        .iter()
        .map(|&i| {
            let diff = p.vertices()[i].sub(base);
            QVector::new(chart.iter().map(|&c| diff[c].clone()).collect())
        })
        .collect();
    let det = QMatrix::from_rows(rows).determinant().expect("square");
    det.abs() / rat_of(factorial(d))
}

impl Body {
    /// Exact Lebesgue measure. Lower-dimensional bodies are measured inside
    /// their affine hull, in the coordinates of the hull chart (for
    /// full-dimensional bodies this is the ordinary volume).
    pub fn volume(&self) -> Result<Rational> {
        let p = self.as_polytope()?;
        if p.dim() == 0 {
            // 0-dimensional Lebesgue measure is the counting measure
            return Ok(Rational::one());
        }
        let mut vol = Rational::zero();
        for s in triangulate(p) {
            vol += simplex_volume(p, &s);
        }
        Ok(vol)
    }

    /// Exact centroid (full-dimensional polytopes).
    pub fn centroid(&self) -> Result<QVector> {
        let p = self.as_polytope()?;
        let n = p.ambient();
        if p.dim() == 0 {
            return Ok(p.vertices()[0].clone());
        }
        let mut total = Rational::zero();
        let mut acc = QVector::zeros(n);
        let weight = rat_of(Int::from((p.dim() + 1) as i64)).recip();
        for s in triangulate(p) {
            let v = simplex_volume(p, &s);
            if v.is_zero() {
                continue;
            }
            let mut c = QVector::zeros(n);
            for &i in &s {
                c = c.add(&p.vertices()[i]);
            }
            acc = acc.add(&c.scale(&weight).scale(&v));
            total += v;
        }
        Ok(acc.scale(&total.recip()))
    }
}
