//! Hyperplane slices and lattice projections, expressed in the coordinates
//! of the corresponding hyperplane lattice / projected lattice.

use num_integer::Integer;
use num_traits::Zero;

use super::Body;
use crate::exact::{integer_kernel, solve_integer, Int, QMatrix, QVector, Rational};
use crate::{Error, Result};

/// Coordinate chart of a lattice hyperplane `{x : <b, x> = j}`: the affine
/// map `c -> shift + basis * c` parameterizes the integer points of the
/// hyperplane by `Z^{n-1}`.
#[derive(Clone, Debug)]
pub struct SliceChart {
    pub shift: QVector,
    pub basis: QMatrix,
}

/// A body sliced by a lattice hyperplane, in hyperplane-lattice coordinates.
#[derive(Clone, Debug)]
pub struct Slice {
    pub body: Body,
    /// `None` when the hyperplane carries no lattice points (non-primitive
    /// normal whose gcd does not divide the level).
    pub chart: Option<SliceChart>,
    /// Set when the input normal had to be divided by a gcd > 1.
    pub normalized: bool,
}

/// Projection of a body onto `v^perp`, in projected-lattice coordinates.
/// With `w` the columns of `kernel_basis` (a basis of `Z^n ∩ v^perp`), the
/// coordinates of the projected lattice are `c = kernel_basis^T x`, and the
/// projected lattice itself becomes `Z^{n-1}`.
#[derive(Clone, Debug)]
pub struct Projection {
    pub body: Body,
    pub kernel_basis: QMatrix,
}

fn primitive_normal_of(b: &QVector) -> Result<(QVector, Int)> {
    if b.is_zero() {
        return Err(Error::ZeroVector);
    }
    let ints = b.to_ints().ok_or(Error::NonIntegerEntries)?;
    let mut g = Int::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    let prim: Vec<Int> = ints.iter().map(|v| v / &g).collect();
    Ok((QVector::from_bigints(&prim), g))
}

/// Basis of `Z^n ∩ b^perp` in Hermite normal form (columns).
pub(crate) fn hyperplane_lattice_basis(b: &QVector) -> Result<QMatrix> {
    let row = QMatrix::from_rows(vec![b.clone()]);
    let ker = integer_kernel(&row)?;
    Ok(QMatrix::from_columns(ker))
}

/// Slice `K ∩ {x : <b, x> = level}` in the coordinates of the hyperplane's
/// affine lattice. Non-primitive normals are normalized (flagged in the
/// result); when the gcd does not divide the level the hyperplane holds no
/// lattice points and an empty marker with no chart is returned.
pub fn slice(body: &Body, b: &QVector, level: &Int) -> Result<Slice> {
    let n = body.ambient();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    let (prim, g) = primitive_normal_of(b)?;
    let normalized = g != Int::from(1);
    let (level, remainder) = level.div_rem(&g);
    if !remainder.is_zero() {
        return Ok(Slice {
            body: Body::Empty(n.saturating_sub(1)),
            chart: None,
            normalized,
        });
    }
    let basis = hyperplane_lattice_basis(&prim)?;
    let shift = solve_integer(
        &QMatrix::from_rows(vec![prim.clone()]),
        &QVector::from_bigints(&[level]),
    )?
    .expect("primitive normal always admits a lattice point at an integer level");
    let chart = SliceChart {
        shift: shift.clone(),
        basis: basis.clone(),
    };
    let sliced = match body {
        Body::Empty(_) => Body::Empty(n.saturating_sub(1)),
        Body::Ball(_) => return Err(Error::NotPolytope),
        Body::Polytope(p) => {
            // substitute x = shift + basis c into every inequality row
            let rows: Vec<(QVector, Rational)> = p
                .inequality_rows()
                .iter()
                .map(|(a, rhs)| {
                    let coeffs =
                        QVector::new((0..basis.n_cols()).map(|j| a.dot(&basis.col(j))).collect());
                    (coeffs, rhs - a.dot(&shift))
                })
                .collect();
            Body::from_halfspaces(n - 1, rows)?
        }
    };
    Ok(Slice {
        body: sliced,
        chart: Some(chart),
        normalized,
    })
}

/// Orthogonal projection of `K` onto `v^perp` in projected-lattice
/// coordinates `c = W^T x` (`W` = basis of `Z^n ∩ v^perp`).
pub fn project(body: &Body, v: &QVector) -> Result<Projection> {
    let n = body.ambient();
    if v.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.dim(),
        });
    }
    let (prim, _) = primitive_normal_of(v)?;
    let kernel_basis = hyperplane_lattice_basis(&prim)?;
    let wt = kernel_basis.transpose();
    let projected = match body {
        Body::Empty(_) => Body::Empty(n.saturating_sub(1)),
        Body::Ball(_) => return Err(Error::NotPolytope),
        Body::Polytope(p) => Body::from_vertices(
            n - 1,
            p.vertices().iter().map(|x| wt.matvec(x)).collect(),
        )?,
    };
    Ok(Projection {
        body: projected,
        kernel_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rint;

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

    fn simplex_t_k(k: i64) -> Body {
        Body::from_vertices(
            3,
            vec![
                QVector::from_ints(&[0, 0, 0]),
                QVector::from_ints(&[1, 0, 0]),
                QVector::from_ints(&[1, k, 0]),
                QVector::from_ints(&[0, 0, k]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn cube_slice_is_cube() {
        // C3 ∩ {x3 = 0} = C2 in hyperplane coordinates
        let s = slice(&cube(3), &QVector::unit(3, 2), &Int::from(0)).unwrap();
        assert!(!s.normalized);
        assert_eq!(s.body, cube(2));
    }

    #[test]
    fn simplex_slice_is_segment() {
        // T_k ∩ e1^perp is the segment [0, k e3]; k + 1 lattice points later
        let k = 5;
        let s = slice(&simplex_t_k(k), &QVector::unit(3, 0), &Int::from(0)).unwrap();
        let p = s.body.as_polytope().unwrap();
        assert_eq!(p.dim(), 1);
        // chart coordinates: the kernel basis of e1 is {e2, e3}
        assert_eq!(p.vertices().len(), 2);
    }

    #[test]
    fn cube_slice_by_binary_weights_has_single_point() {
        // C_n ∩ u^perp with u = (1, 2, 4, ...) contains only the origin as
        // a lattice point; the slice body is full dimensional though
        let n = 4;
        let mut u = Vec::new();
        for i in 0..n {
            u.push(1i64 << i);
        }
        let s = slice(&cube(n), &QVector::from_ints(&u), &Int::from(0)).unwrap();
        assert_eq!(s.body.dim(), Some(n - 1));
    }

    #[test]
    fn non_primitive_normal_is_normalized() {
        let s = slice(&cube(2), &QVector::from_ints(&[2, 0]), &Int::from(2)).unwrap();
        assert!(s.normalized);
        assert!(!s.body.is_empty());
        // gcd does not divide the level: no lattice hyperplane
        let s2 = slice(&cube(2), &QVector::from_ints(&[2, 0]), &Int::from(1)).unwrap();
        assert!(s2.body.is_empty());
        assert!(s2.chart.is_none());
    }

    #[test]
    fn slice_body_count_matches_direct_filter() {
        // counting the slice in its own chart equals filtering the body's
        // lattice points by the hyperplane equation
        use crate::counting::{count_standard, CountOptions};
        let bodies = [simplex_t_k(4), cube(3)];
        let normals = [
            QVector::from_ints(&[1, 0, 0]),
            QVector::from_ints(&[1, -1, 2]),
            QVector::from_ints(&[2, 2, 0]), // non-primitive
        ];
        for body in &bodies {
            let all = count_standard(body, &CountOptions { point_limit: u64::MAX }).unwrap();
            let pts = all.points.unwrap();
            for b in &normals {
                for level in -3i64..=3 {
                    let s = slice(body, b, &Int::from(level)).unwrap();
                    let sliced = count_standard(&s.body, &CountOptions::count_only())
                        .unwrap()
                        .count;
                    let direct = pts
                        .iter()
                        .filter(|c| {
                            b.dot(&QVector::from_bigints(c)) == crate::exact::rint(level)
                        })
                        .count() as u64;
                    assert_eq!(sliced, direct, "body slice {b:?} level {level}");
                }
            }
        }
    }

    #[test]
    fn missing_slice_is_empty() {
        let s = slice(&cube(2), &QVector::unit(2, 0), &Int::from(5)).unwrap();
        assert!(s.body.is_empty());
        assert!(s.chart.is_some());
    }

    #[test]
    fn cube_projection_is_cube() {
        let p = project(&cube(3), &QVector::unit(3, 2)).unwrap();
        assert_eq!(p.body, cube(2));
    }

    #[test]
    fn unconditional_section_equals_projection() {
        // for unconditional bodies K ∩ e_i^perp = K | e_i^perp, and both
        // charts use the same hyperplane-lattice coordinates
        let n = 3;
        let kh = {
            // double pyramid over the square, an unconditional body
            let mut pts = Vec::new();
            for (x, y) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                pts.push(QVector::from_ints(&[x, y, 0]));
            }
            pts.push(QVector::from_ints(&[0, 0, 4]));
            pts.push(QVector::from_ints(&[0, 0, -4]));
            Body::from_vertices(n, pts).unwrap()
        };
        assert!(kh.symmetry().unconditional);
        for i in 0..n {
            let e = QVector::unit(n, i);
            let s = slice(&kh, &e, &Int::from(0)).unwrap();
            let p = project(&kh, &e).unwrap();
            assert_eq!(s.body, p.body, "axis {i}");
        }
    }

    #[test]
    fn cube_section_projects_to_smaller_cube() {
        // (C_n ∩ u^perp) | e_n^perp = C_{n-1} with u = (1, 2, 4, ...)
        for n in [3usize, 4] {
            let u = QVector::from_ints(&(0..n).map(|i| 1i64 << i).collect::<Vec<_>>());
            let mut rows: Vec<(QVector, crate::exact::Rational)> = (0..n)
                .flat_map(|i| {
                    [
                        (QVector::unit(n, i), rint(1)),
                        (QVector::unit(n, i).neg(), rint(1)),
                    ]
                })
                .collect();
            rows.push((u.clone(), rint(0)));
            rows.push((u.neg(), rint(0)));
            let section = Body::from_halfspaces(n, rows).unwrap();
            let projected = project(&section, &QVector::unit(n, n - 1)).unwrap();
            assert_eq!(projected.body, cube(n - 1));
        }
    }

    #[test]
    fn projection_of_diagonal_direction() {
        // Z^2 | (1,1)^perp: kernel basis (1,-1); C2 projects onto a segment
        let p = project(&cube(2), &QVector::from_ints(&[1, 1])).unwrap();
        let poly = p.body.as_polytope().unwrap();
        assert_eq!(poly.dim(), 1);
        // vertices in kernel coordinates: W^T (±1, ∓1) = ±2
        assert_eq!(poly.vertices().len(), 2);
    }
}
