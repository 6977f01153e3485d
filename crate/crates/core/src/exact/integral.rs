use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, QMatrix, QVector, Rational};
use crate::{Error, Result};

fn to_int_grid(m: &QMatrix) -> Result<Vec<Vec<Int>>> {
    if !m.is_integral() {
        return Err(Error::NonIntegerEntries);
    }
    Ok((0..m.n_rows())
        .map(|r| (0..m.n_cols()).map(|c| m.at(r, c).to_integer()).collect())
        .collect())
}

fn from_int_grid(g: &[Vec<Int>]) -> QMatrix {
    QMatrix::from_rows(
        g.iter()
            .map(|row| QVector::new(row.iter().cloned().map(Rational::from_integer).collect()))
            .collect(),
    )
}

struct ColOps {
    m: Vec<Vec<Int>>, // n x k, row-major
    u: Vec<Vec<Int>>, // k x k, row-major
    n: usize,
    k: usize,
}

impl ColOps {
    fn new(m: Vec<Vec<Int>>) -> Self {
        let n = m.len();
        let k = m.first().map_or(0, Vec::len);
        let mut u = vec![vec![Int::zero(); k]; k];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = Int::one();
        }
        ColOps { m, u, n, k }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.m.iter_mut() {
            row.swap(a, b);
        }
        for row in self.u.iter_mut() {
            row.swap(a, b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for row in self.m.iter_mut() {
            row[c] = -row[c].clone();
        }
        for row in self.u.iter_mut() {
            row[c] = -row[c].clone();
        }
    }

    /// col_dst -= q * col_src
    fn subtract_col(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for row in self.m.iter_mut() {
            let v = &row[dst] - q * &row[src];
            row[dst] = v;
        }
        for row in self.u.iter_mut() {
            let v = &row[dst] - q * &row[src];
            row[dst] = v;
        }
    }
}

/// Column-style Hermite normal form of an integer matrix.
///
/// Returns `(H, U)` with `M * U = H`, `U` unimodular (`|det U| = 1`),
/// `H` in column echelon form with positive pivots and entries left of a
/// pivot reduced to `[0, pivot)`. For square nonsingular `M` the result is
/// lower triangular.
pub fn hnf(m: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    let grid = to_int_grid(m)?;
    let mut ops = ColOps::new(grid);
    let (n, k) = (ops.n, ops.k);
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_col = 0usize;
    for r in 0..n {
        if next_col >= k {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (next_col..k).filter(|&j| !ops.m[r][j].is_zero()).collect();
            match nonzero.len() {
                0 => break,
                1 => {
                    ops.swap_cols(next_col, nonzero[0]);
                    break;
                }
                _ => {
                    let best = *nonzero
                        .iter()
                        .min_by_key(|&&j| ops.m[r][j].abs())
                        .expect("non-empty");
                    ops.swap_cols(next_col, best);
                    for j in next_col + 1..k {
                        if !ops.m[r][j].is_zero() {
                            let q = &ops.m[r][j] / &ops.m[r][next_col];
                            ops.subtract_col(j, next_col, &q);
                        }
                    }
                }
            }
        }
        if !ops.m[r][next_col].is_zero() {
            if ops.m[r][next_col].is_negative() {
                ops.negate_col(next_col);
            }
            // canonical reduction of entries left of this pivot
            for c in 0..next_col {
                let q = ops.m[r][c].div_floor(&ops.m[r][next_col]);
                ops.subtract_col(c, next_col, &q);
            }
            pivots.push((r, next_col));
            next_col += 1;
        }
    }
    Ok((from_int_grid(&ops.m), from_int_grid(&ops.u)))
}

/// Canonical basis of the integer kernel `{x in Z^k : M x = 0}`.
///
/// The kernel of an integer matrix is automatically saturated; the returned
/// basis is put into Hermite normal form for reproducible coordinates.
pub fn integer_kernel(m: &QMatrix) -> Result<Vec<QVector>> {
    let (h, u) = hnf(m)?;
    let mut ker_cols: Vec<QVector> = Vec::new();
    for j in 0..h.n_cols() {
        if (0..h.n_rows()).all(|r| h.at(r, j).is_zero()) {
            ker_cols.push(u.col(j));
        }
    }
    if ker_cols.is_empty() {
        return Ok(ker_cols);
    }
    let (kh, _) = hnf(&QMatrix::from_columns(ker_cols))?;
    let mut basis = Vec::new();
    for j in 0..kh.n_cols() {
        let col = kh.col(j);
        if !col.is_zero() {
            basis.push(col);
        }
    }
    Ok(basis)
}

/// Solve `M x = c` over the integers; `None` when no integral solution exists.
pub fn solve_integer(m: &QMatrix, c: &QVector) -> Result<Option<QVector>> {
    if c.dim() != m.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: m.n_rows(),
            got: c.dim(),
        });
    }
    if !c.is_integral() {
        return Ok(None);
    }
    let (h, u) = hnf(m)?;
    let n = h.n_rows();
    let k = h.n_cols();
    // pivot col for each row, if any
    let mut y = vec![Int::zero(); k];
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    {
        let mut r0 = 0usize;
        for j in 0..k {
            let mut pr = None;
            for r in r0..n {
                if !h.at(r, j).is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            if let Some(r) = pr {
                pivot_of_col[j] = Some(r);
                r0 = r + 1;
            }
        }
    }
    let mut col_of_row: Vec<Option<usize>> = vec![None; n];
    for (j, p) in pivot_of_col.iter().enumerate() {
        if let Some(r) = *p {
            col_of_row[r] = Some(j);
        }
    }
    for r in 0..n {
        let mut residual = c[r].to_integer();
        for j in 0..k {
            if pivot_of_col[j].map_or(false, |pr| pr < r) && !h.at(r, j).is_zero() {
                residual -= h.at(r, j).to_integer() * &y[j];
            }
        }
        match col_of_row[r] {
            Some(j) => {
                let p = h.at(r, j).to_integer();
                let (q, rem) = residual.div_rem(&p);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y[j] = q;
            }
            None => {
                if !residual.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(u.matvec(&QVector::from_bigints(&y))))
}

/// Extend the columns of `c` (a `k x (k-1)` integer matrix spanning a
/// saturated sublattice) by one vector `w` so that `det [c | w] = 1`.
pub fn unimodular_completion(c: &QMatrix) -> Result<QVector> {
    let k = c.n_rows();
    if c.n_cols() + 1 != k {
        return Err(Error::RankMismatch {
            expected: k.saturating_sub(1),
            got: c.n_cols(),
        });
    }
    if !c.is_integral() {
        return Err(Error::NonIntegerEntries);
    }
    // Laplace expansion along the appended column: det[c | w] = sum_j a_j w_j
    let mut coeffs = Vec::with_capacity(k);
    for j in 0..k {
        let minor = QMatrix::from_rows(
            (0..k)
                .filter(|&r| r != j)
                .map(|r| c.row(r))
                .collect::<Vec<_>>(),
        );
        let det = if k == 1 {
            Rational::one()
        } else {
            minor.determinant()?
        };
        let sign = if (j + k + 1) % 2 == 0 { 1 } else { -1 };
        coeffs.push(det.to_integer() * Int::from(sign));
    }
    // solve sum a_j w_j = 1 by iterated extended gcd
    let mut w = vec![Int::zero(); k];
    let mut g = Int::zero();
    for (j, a) in coeffs.iter().enumerate() {
        if j == 0 {
            g = a.clone();
            w[0] = Int::one();
            continue;
        }
        let e = g.extended_gcd(a);
        for wj in w.iter_mut().take(j) {
            *wj *= &e.x;
        }
        w[j] = e.y.clone();
        g = e.gcd;
    }
    if g.abs() != Int::one() {
        return Err(Error::NotIndependent);
    }
    if g.is_negative() {
        for wj in w.iter_mut() {
            *wj = -wj.clone();
        }
    }
    Ok(QVector::from_bigints(&w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rint;

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| QVector::from_ints(r)).collect())
    }

    fn check_hnf(m: &QMatrix) {
        let (h, u) = hnf(m).unwrap();
        assert_eq!(m.matmul(&u), h, "M * U = H");
        let det_u = u.determinant().unwrap();
        assert!(
            det_u == rint(1) || det_u == rint(-1),
            "U unimodular, got det {det_u:?}"
        );
    }

    #[test]
    fn hnf_two_by_two() {
        let m = mat(&[&[2, 1], &[0, 1]]);
        let (h, u) = hnf(&m).unwrap();
        check_hnf(&m);
        // lower triangular with positive pivots
        assert!(h.at(0, 1).is_zero());
        assert!(h.at(0, 0) > &rint(0) && h.at(1, 1) > &rint(0));
        assert_eq!(m.matmul(&u), h);
    }

    #[test]
    fn hnf_identity_fixed_point() {
        let (h, _) = hnf(&QMatrix::identity(3)).unwrap();
        assert_eq!(h, QMatrix::identity(3));
    }

    #[test]
    fn hnf_random_property() {
        // small deterministic pseudo-random integer matrices
        let mut state = 0x12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) % 13) as i64 - 6
        };
        for _ in 0..25 {
            let rows: Vec<QVector> = (0..4)
                .map(|_| QVector::from_ints(&[next(), next(), next(), next()]))
                .collect();
            check_hnf(&QMatrix::from_rows(rows));
        }
    }

    #[test]
    fn hnf_rejects_non_integer() {
        let m = QMatrix::from_rows(vec![QVector::new(vec![crate::exact::rat(1, 2)])]);
        assert!(matches!(hnf(&m), Err(Error::NonIntegerEntries)));
    }

    #[test]
    fn kernel_of_single_row() {
        let m = mat(&[&[1, 2, 2]]);
        let ker = integer_kernel(&m).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.matvec(v).is_zero());
            assert!(v.is_integral());
        }
    }

    #[test]
    fn integer_solve() {
        let m = mat(&[&[2, 0], &[0, 3]]);
        let sol = solve_integer(&m, &QVector::from_ints(&[4, 9])).unwrap().unwrap();
        assert_eq!(sol, QVector::from_ints(&[2, 3]));
        assert!(solve_integer(&m, &QVector::from_ints(&[1, 0]))
            .unwrap()
            .is_none());
        // underdetermined
        let m2 = mat(&[&[1, 2]]);
        let s = solve_integer(&m2, &QVector::from_ints(&[7])).unwrap().unwrap();
        assert_eq!(m2.matvec(&s), QVector::from_ints(&[7]));
    }

    #[test]
    fn completion_makes_unimodular() {
        let c = QMatrix::from_columns(vec![QVector::from_ints(&[2, 1])]);
        let w = unimodular_completion(&c).unwrap();
        let full = QMatrix::from_columns(vec![c.col(0), w]);
        assert_eq!(full.determinant().unwrap(), rint(1));
        // k = 1 edge: empty matrix completes to (1)
        let empty = QMatrix::zeros(1, 0);
        assert_eq!(unimodular_completion(&empty).unwrap(), QVector::from_ints(&[1]));
    }
}
