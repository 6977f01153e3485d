//! Successive minima by exact enumeration, and gauge-short lattice bases
//! built from the minima witnesses.

use num_traits::Zero;

use super::Lattice;
use crate::body::Body;
use crate::counting::{count, CountOptions};
use crate::exact::{rat, rint, round_int, QMatrix, QVector, Rational};
use crate::lattice::AffineLattice;
use crate::{Error, Result};

/// Successive minima `λ_1 <= ... <= λ_n` with witness lattice vectors
/// (`witness_i` has gauge exactly `λ_i`).
#[derive(Clone, Debug)]
pub struct MinimaProfile {
    pub minima: Vec<Rational>,
    pub witnesses: Vec<QVector>,
}

/// Lattice basis with certified gauge bounds `|b_i|_K <= max(1, i/2) λ_i`.
#[derive(Clone, Debug)]
pub struct MahlerBasis {
    pub vectors: Vec<QVector>,
    pub gauge_values: Vec<Rational>,
}

fn require_symmetric_full_dim(body: &Body) -> Result<()> {
    let p = body.as_polytope()?;
    if !p.symmetry().origin_symmetric {
        return Err(Error::NotSymmetric);
    }
    if !p.origin_interior() {
        return Err(Error::NotFullDimensional);
    }
    Ok(())
}

/// All non-zero lattice points of `mu K` with their gauges, sorted by
/// (gauge, lattice coordinates).
fn gauge_sorted_points(
    body: &Body,
    lat: &Lattice,
    mu: &Rational,
) -> Result<Vec<(Rational, QVector, QVector)>> {
    let dilated = body.dilate(mu)?;
    let res = count(
        &dilated,
        &AffineLattice::linear(lat.clone()),
        &CountOptions { point_limit: u64::MAX },
    )?;
    let mut out = Vec::new();
    for coords in res.points.expect("points retained") {
        let c = QVector::from_bigints(&coords);
        if c.is_zero() {
            continue;
        }
        let x = lat.point(&c);
        out.push((body.gauge(&x)?, c, x));
    }
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    Ok(out)
}

/// Exact successive minima of a symmetric full-dimensional polytope with
/// respect to a full-rank lattice, by enumeration of `mu K` for doubling
/// `mu` (capped by the largest basis-vector gauge, which always suffices).
pub fn successive_minima(body: &Body, lat: &Lattice) -> Result<MinimaProfile> {
    require_symmetric_full_dim(body)?;
    if !lat.is_full_rank() {
        return Err(Error::NotFullRank);
    }
    let n = lat.ambient();
    let basis_gauges: Vec<Rational> = lat
        .basis_vectors()
        .iter()
        .map(|b| body.gauge(b))
        .collect::<Result<_>>()?;
    let cap = basis_gauges.iter().max().expect("non-empty").clone();
    let mut mu = basis_gauges.iter().min().expect("non-empty").clone();
    loop {
        let candidates = gauge_sorted_points(body, lat, &mu)?;
        let mut chosen: Vec<(Rational, QVector)> = Vec::new();
        let mut cols: Vec<QVector> = Vec::new();
        for (g, _, x) in &candidates {
            if cols.len() == n {
                break;
            }
            cols.push(x.clone());
            if QMatrix::from_columns(cols.clone()).rank() == cols.len() {
                chosen.push((g.clone(), x.clone()));
            } else {
                cols.pop();
            }
        }
        if chosen.len() == n {
            return Ok(MinimaProfile {
                minima: chosen.iter().map(|(g, _)| g.clone()).collect(),
                witnesses: chosen.into_iter().map(|(_, x)| x).collect(),
            });
        }
        if mu >= cap {
            // the full basis lies in cap * K, so this cannot happen
            return Err(Error::BoundViolation(
                "minima enumeration failed to reach full rank".into(),
            ));
        }
        mu = (mu * rint(2)).min(cap.clone());
    }
}

/// Basis of `Λ` with `|b_i|_K <= max(1, i/2) λ_i(K, Λ)`.
///
/// Construction: walk up the flag of primitive sublattices spanned by the
/// minima witnesses; at each step lift a generator of the rank-`i` quotient
/// and replace it by the gauge-minimal vector of its coset modulo the
/// already-built basis (exact coset enumeration inside a gauge ball). The
/// classical bound is asserted afterwards and violation is an internal
/// error, not an input error.
pub fn mahler_basis(body: &Body, lat: &Lattice) -> Result<MahlerBasis> {
    let profile = successive_minima(body, lat)?;
    let n = lat.ambient();
    let mut basis: Vec<QVector> = Vec::new();
    let mut gauges: Vec<Rational> = Vec::new();
    let mut sub = Lattice::trivial(n);
    for i in 1..=n {
        let flag = lat.primitive_sublattice(&profile.witnesses[..i])?;
        let gen = flag.complete_corank_one(&sub)?;
        // coarse reduction: subtract the rounded basis coefficients
        let reduced = if basis.is_empty() {
            gen
        } else {
            let mut cols = basis.clone();
            cols.push(profile.witnesses[i - 1].clone());
            let m = QMatrix::from_columns(cols);
            let alpha = m.rref_solve(&gen).expect("generator lies in the flag span");
            let mut red = gen;
            for (j, b) in basis.iter().enumerate() {
                let r = round_int(&alpha[j]);
                if !r.is_zero() {
                    red = red.sub(&b.scale(&crate::exact::rat_of(r)));
                }
            }
            red
        };
        // exact coset minimization inside gauge(reduced) * K
        let bound = body.gauge(&reduced)?;
        let ball = body.dilate(&bound)?;
        let coset = AffineLattice::new(sub.clone(), reduced.clone())?;
        let res = count(&ball, &coset, &CountOptions { point_limit: u64::MAX })?;
        let mut best: Option<(Rational, QVector, QVector)> = None;
        for coords in res.points.expect("points retained") {
            let c = QVector::from_bigints(&coords);
            let x = sub.point(&c).add(&reduced);
            let g = body.gauge(&x)?;
            let key = (g.clone(), lat.coords(&x).ok_or(Error::NotInLattice)?);
            let better = match &best {
                None => true,
                Some((bg, bc, _)) => key < (bg.clone(), bc.clone()),
            };
            if better {
                best = Some((key.0, key.1, x));
            }
        }
        let (g, _, b_i) = best.expect("coset contains the reduced generator");
        let limit = rat(1, 1).max(rat(i as i64, 2)) * &profile.minima[i - 1];
        if g > limit {
            return Err(Error::BoundViolation(format!(
                "|b_{i}|_K = {} exceeds max(1, {i}/2) lambda_{i} = {}",
                crate::exact::format_rat(&g),
                crate::exact::format_rat(&limit),
            )));
        }
        basis.push(b_i);
        gauges.push(g);
        sub = flag;
    }
    debug_assert!(sub.same_lattice(lat));
    Ok(MahlerBasis {
        vectors: basis,
        gauge_values: gauges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn cube(n: usize) -> Body {
        let rows = (0..n)
            .flat_map(|i| {
                [
                    (QVector::unit(n, i), rint(1)),
                    (QVector::unit(n, i).neg(), rint(1)),
                ]
            })
            .collect();
        Body::from_halfspaces(n, rows).unwrap()
    }

    fn stretched_cross(h: i64) -> Body {
        Body::from_vertices(
            2,
            vec![
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[-1, 0]),
                QVector::from_ints(&[0, h]),
                QVector::from_ints(&[0, -h]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn cube_minima_are_all_one() {
        for n in [2usize, 3, 4] {
            let p = successive_minima(&cube(n), &Lattice::standard(n)).unwrap();
            assert!(p.minima.iter().all(|l| l == &rint(1)));
            for w in &p.witnesses {
                assert_eq!(cube(n).gauge(w).unwrap(), rint(1));
            }
            assert_eq!(QMatrix::from_columns(p.witnesses.clone()).rank(), n);
        }
    }

    #[test]
    fn stretched_cross_minima() {
        let h = 6;
        let body = stretched_cross(h);
        let p = successive_minima(&body, &Lattice::standard(2)).unwrap();
        assert_eq!(p.minima[0], rat(1, h));
        assert_eq!(p.minima[1], rint(1));
        // first witness lies on the x2 axis, second on the x1 axis
        assert!(p.witnesses[0][0].is_zero());
        assert!(!p.witnesses[1][0].is_zero());
    }

    #[test]
    fn shrunken_cube_minima_scale() {
        let half = cube(3).dilate(&rat(1, 2)).unwrap();
        let p = successive_minima(&half, &Lattice::standard(3)).unwrap();
        assert!(p.minima.iter().all(|l| l == &rint(2)));
    }

    #[test]
    fn minima_ordered_and_witnesses_exact() {
        let body = stretched_cross(4);
        let p = successive_minima(&body, &Lattice::standard(2)).unwrap();
        assert!(p.minima.windows(2).all(|w| w[0] <= w[1]));
        for (l, w) in p.minima.iter().zip(&p.witnesses) {
            assert_eq!(&body.gauge(w).unwrap(), l);
        }
    }

    #[test]
    fn minima_reject_asymmetric_input() {
        let t = Body::from_vertices(
            2,
            vec![
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[0, 1]),
            ],
        )
        .unwrap();
        assert!(successive_minima(&t, &Lattice::standard(2)).is_err());
    }

    #[test]
    fn mahler_basis_of_cube_is_gauge_one() {
        let mb = mahler_basis(&cube(3), &Lattice::standard(3)).unwrap();
        assert!(mb.gauge_values.iter().all(|g| g == &rint(1)));
        let m = QMatrix::from_columns(mb.vectors.clone());
        assert_eq!(m.determinant().unwrap().abs(), rint(1));
    }

    #[test]
    fn mahler_basis_of_stretched_cross() {
        let h = 5;
        let mb = mahler_basis(&stretched_cross(h), &Lattice::standard(2)).unwrap();
        assert_eq!(mb.gauge_values[0], rat(1, h));
        assert_eq!(mb.gauge_values[1], rint(1));
        let m = QMatrix::from_columns(mb.vectors.clone());
        assert_eq!(m.determinant().unwrap().abs(), rint(1));
    }

    #[test]
    fn mahler_bound_on_skewed_bodies() {
        // a few fixed symmetric hulls; the gauge bound must certify
        let samples: Vec<Vec<[i64; 3]>> = vec![
            vec![[2, 1, 0], [0, 3, 1], [1, 0, 4]],
            vec![[1, 1, 1], [2, -1, 0], [0, 0, 5]],
            vec![[3, 0, 0], [1, 2, 0], [1, 1, 3]],
        ];
        for pts in samples {
            let mut verts = Vec::new();
            for p in &pts {
                verts.push(QVector::from_ints(p));
                verts.push(QVector::from_ints(p).neg());
            }
            let body = Body::from_vertices(3, verts).unwrap();
            let lat = Lattice::standard(3);
            let profile = successive_minima(&body, &lat).unwrap();
            let mb = mahler_basis(&body, &lat).unwrap();
            for (i, g) in mb.gauge_values.iter().enumerate() {
                let limit = rat(1, 1).max(rat(i as i64 + 1, 2)) * &profile.minima[i];
                assert!(g <= &limit, "gauge bound violated at index {i}");
            }
            let m = QMatrix::from_columns(mb.vectors.clone());
            assert_eq!(m.determinant().unwrap().abs(), rint(1));
        }
    }

    #[test]
    fn transference_bound_eq5() {
        // λ_i(K*, Λ*) λ_{n+1-i}(K, Λ) >= 1
        for body in [cube(3), stretched_cross(7)] {
            let n = body.ambient();
            let lat = Lattice::standard(n);
            let polar_body = body.polar().unwrap();
            let polar_lat = lat.polar().unwrap();
            let p = successive_minima(&body, &lat).unwrap();
            let q = successive_minima(&polar_body, &polar_lat).unwrap();
            for i in 0..n {
                let prod = &q.minima[i] * &p.minima[n - 1 - i];
                assert!(prod >= rint(1), "transference failed at i={i}");
            }
        }
    }

    #[test]
    fn minkowski_bounds() {
        // 2^n/n! det <= prod λ_i vol <= 2^n det
        for (body, n) in [(cube(2), 2usize), (cube(3), 3), (stretched_cross(9), 2)] {
            let lat = Lattice::standard(n);
            let p = successive_minima(&body, &lat).unwrap();
            let vol = body.volume().unwrap();
            let prod = p
                .minima
                .iter()
                .fold(Rational::from_integer(1.into()), |acc, l| acc * l)
                * vol;
            let det = lat.det_abs().unwrap();
            let factorial: i64 = (1..=n as i64).product();
            assert!(prod <= rint(1 << n) * det.clone());
            assert!(prod >= rat(1 << n, factorial) * det);
        }
    }
}
