//! Exact facet/vertex enumeration by brute-force subset scan.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Polytope, SymmetryTag};
use crate::exact::{rat_of, Int, QMatrix, QVector, Rational};
use crate::{Error, Result};

/// Iterate all `k`-subsets of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Scale `(a, b)` so the normal has coprime integer entries; the positive
/// scaling keeps the inequality direction.
fn normalize_row(a: &QVector, b: &Rational) -> (QVector, Rational) {
    let mut l = Int::one();
    for c in a.coords() {
        l = l.lcm(c.denom());
    }
    let lr = rat_of(l);
    let ints: Vec<Int> = a.coords().iter().map(|c| (c * &lr).to_integer()).collect();
    let mut g = Int::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return (a.clone(), b.clone());
    }
    let scale = lr / rat_of(g);
    (a.scale(&scale), b * &scale)
}

/// Hyperplane key for deduplication.
fn row_key(a: &QVector, b: &Rational) -> (Vec<Int>, Rational) {
    (
        a.coords().iter().map(|c| c.to_integer()).collect(),
        b.clone(),
    )
}

pub(super) fn symmetry_of(vertices: &[QVector]) -> SymmetryTag {
    let set: BTreeSet<&QVector> = vertices.iter().collect();
    let origin_symmetric = vertices.iter().all(|v| set.contains(&v.neg()));
    let n = vertices.first().map_or(0, QVector::dim);
    let unconditional = origin_symmetric
        && (0..n).all(|i| {
            let mut mask = vec![false; n];
            mask[i] = true;
            vertices.iter().all(|v| set.contains(&v.flip_signs(&mask)))
        });
    SymmetryTag {
        origin_symmetric,
        unconditional,
    }
}

/// Facets of a full-dimensional point set in dimension `d` (the points live
/// in `R^d`). Every facet is spanned by some `d`-subset with affine rank
/// `d - 1`; the subset scan classifies the side and dedupes.
fn facet_scan(points: &[QVector], d: usize) -> Vec<(QVector, Rational)> {
    let mut out: Vec<(QVector, Rational)> = Vec::new();
    let mut seen: BTreeSet<(Vec<Int>, Rational)> = BTreeSet::new();
    match d {
        0 => {}
        1 => {
            let vals: Vec<&Rational> = points.iter().map(|p| &p[0]).collect();
            let max = vals.iter().copied().max().unwrap().clone();
            let min = vals.iter().copied().min().unwrap().clone();
            out.push((QVector::from_ints(&[1]), max));
            out.push((QVector::from_ints(&[-1]), -min));
        }
        _ => {
            for_each_combination(points.len(), d, |subset| {
                let base = &points[subset[0]];
                let diffs: Vec<QVector> = subset[1..]
                    .iter()
                    .map(|&i| points[i].sub(base))
                    .collect();
                let m = QMatrix::from_rows(diffs);
                let ker = m.kernel();
                if ker.len() != 1 {
                    return; // degenerate subset
                }
                let (a, _) = normalize_row(&ker[0], &Rational::zero());
                let beta = a.dot(base);
                let mut above = false;
                let mut below = false;
                for p in points {
                    let v = a.dot(p);
                    if v > beta {
                        above = true;
                    } else if v < beta {
                        below = true;
                    }
                    if above && below {
                        return;
                    }
                }
                let (a, beta) = if above { (a.neg(), -beta) } else { (a, beta) };
                if seen.insert(row_key(&a, &beta)) {
                    out.push((a, beta));
                }
            });
        }
    }
    out.sort_by(|x, y| x.cmp(y));
    out
}

/// Canonicalize a deduplicated, sorted point list into a `Polytope`.
pub(super) fn canonicalize_from_points(
    ambient: usize,
    pts: Vec<QVector>,
    cap: usize,
) -> Result<Polytope> {
    let base = pts[0].clone();
    let dirs = QMatrix::from_rows(pts.iter().map(|p| p.sub(&base)).collect());
    // hull equations: a with dirs . a = 0
    let mut equalities: Vec<(QVector, Rational)> = dirs
        .kernel()
        .iter()
        .map(|a| {
            let (a, _) = normalize_row(a, &Rational::zero());
            let b = a.dot(&base);
            (a, b)
        })
        .collect();
    equalities.sort();
    let d = ambient - equalities.len();
    if d > cap {
        return Err(Error::DimensionCap { dim: d, cap });
    }
    // chart: coordinates where the direction space projects bijectively
    let chart: Vec<usize> = dirs.rref_pivots();
    debug_assert_eq!(chart.len(), d);

    let proj = |p: &QVector| QVector::new(chart.iter().map(|&i| p[i].clone()).collect());
    let q: Vec<QVector> = pts.iter().map(|p| proj(p)).collect();
    let chart_facets = facet_scan(&q, d);

    // vertices: points whose active facet rows span the chart space
    let mut vertex_idx: Vec<usize> = Vec::new();
    if d == 0 {
        vertex_idx.push(0);
    } else {
        for (i, qp) in q.iter().enumerate() {
            let active: Vec<QVector> = chart_facets
                .iter()
                .filter(|(a, b)| &a.dot(qp) == b)
                .map(|(a, _)| a.clone())
                .collect();
            if active.len() >= d && QMatrix::from_rows(active).rank() == d {
                vertex_idx.push(i);
            }
        }
    }
    let vertices: Vec<QVector> = vertex_idx.iter().map(|&i| pts[i].clone()).collect();

    // lift chart facets back to ambient coordinates
    let mut facets: Vec<(QVector, Rational)> = chart_facets
        .into_iter()
        .map(|(a, b)| {
            let mut amb = vec![Rational::zero(); ambient];
            for (j, &coord) in chart.iter().enumerate() {
                amb[coord] = a[j].clone();
            }
            (QVector::new(amb), b)
        })
        .collect();
    facets.sort();

    let symmetry = symmetry_of(&vertices);
    Ok(Polytope {
        ambient,
        dim: d,
        vertices,
        facets,
        equalities,
        chart,
        symmetry,
    })
}

/// Exact unboundedness test for `{x : a_i . x <= b_i}`: the recession cone
/// `{y : A y <= 0}` is non-trivial iff `A` has a kernel direction or some
/// extreme ray, and every extreme ray is pinned by `n - 1` independent
/// active rows.
pub(super) fn has_recession_direction(ambient: usize, rows: &[(QVector, Rational)]) -> bool {
    let a = QMatrix::from_rows(rows.iter().map(|(a, _)| a.clone()).collect());
    if a.rank() < ambient {
        return true; // lineality direction
    }
    let admits = |d: &QVector| rows.iter().all(|(a, _)| !a.dot(d).is_positive());
    if ambient == 1 {
        let e = QVector::unit(1, 0);
        return admits(&e) || admits(&e.neg());
    }
    let mut found = false;
    for_each_combination(rows.len(), ambient - 1, |subset| {
        if found {
            return;
        }
        let m = QMatrix::from_rows(subset.iter().map(|&i| rows[i].0.clone()).collect());
        let ker = m.kernel();
        if ker.len() != 1 {
            return;
        }
        if admits(&ker[0]) || admits(&ker[0].neg()) {
            found = true;
        }
    });
    found
}

/// Candidate vertices of `{x : a_i . x <= b_i}` by scanning row subsets of
/// size `ambient` with an invertible coefficient matrix.
pub(super) fn enumerate_vertices(
    ambient: usize,
    rows: &[(QVector, Rational)],
) -> Result<Vec<QVector>> {
    let mut out: BTreeSet<QVector> = BTreeSet::new();
    if ambient == 0 {
        return Ok(vec![QVector::zeros(0)]);
    }
    for_each_combination(rows.len(), ambient, |subset| {
        let m = QMatrix::from_rows(subset.iter().map(|&i| rows[i].0.clone()).collect());
        let rhs = QVector::new(subset.iter().map(|&i| rows[i].1.clone()).collect());
        if let Some(inv) = m.inverse() {
            let x = inv.matvec(&rhs);
            if rows.iter().all(|(a, b)| &a.dot(&x) <= b) {
                out.insert(x);
            }
        }
    });
    Ok(out.into_iter().collect())
}

/// Canonicalize a full-dimensional body given both its vertex set and a
/// defining row system. Every facet of the body is supported by one of the
/// rows, so the facet subset scan can be skipped: a row is a facet iff its
/// contact set has affine rank `n - 1`.
pub(super) fn canonicalize_from_rows(
    ambient: usize,
    pts: Vec<QVector>,
    rows: &[(QVector, Rational)],
) -> Result<Polytope> {
    let mut facets: Vec<(QVector, Rational)> = Vec::new();
    let mut seen: BTreeSet<(Vec<Int>, Rational)> = BTreeSet::new();
    for (a, b) in rows {
        let (a, b) = normalize_row(a, b);
        if !seen.insert(row_key(&a, &b)) {
            continue;
        }
        let contact: Vec<&QVector> = pts.iter().filter(|p| &a.dot(p) == &b).collect();
        if contact.len() < ambient {
            continue;
        }
        let c0 = contact[0];
        let diffs: Vec<QVector> = contact[1..].iter().map(|p| p.sub(c0)).collect();
        if QMatrix::from_rows(diffs).rank() + 1 == ambient {
            facets.push((a, b));
        }
    }
    facets.sort();
    let mut vertices: Vec<QVector> = Vec::new();
    for p in &pts {
        let active: Vec<QVector> = facets
            .iter()
            .filter(|(a, b)| &a.dot(p) == b)
            .map(|(a, _)| a.clone())
            .collect();
        if active.len() >= ambient && QMatrix::from_rows(active).rank() == ambient {
            vertices.push(p.clone());
        }
    }
    let symmetry = symmetry_of(&vertices);
    Ok(Polytope {
        ambient,
        dim: ambient,
        vertices,
        facets,
        equalities: Vec::new(),
        chart: (0..ambient).collect(),
        symmetry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_cover() {
        let mut count = 0;
        for_each_combination(5, 3, |_| count += 1);
        assert_eq!(count, 10);
        let mut seen = Vec::new();
        for_each_combination(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }

    #[test]
    fn simplex_has_four_facets() {
        // T_3: conv{0, e1, e1 + 3 e2, 3 e3}
        let pts = vec![
            QVector::from_ints(&[0, 0, 0]),
            QVector::from_ints(&[1, 0, 0]),
            QVector::from_ints(&[1, 3, 0]),
            QVector::from_ints(&[0, 0, 3]),
        ];
        let p = canonicalize_from_points(3, pts, 6).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.vertices().len(), 4);
    }
}
