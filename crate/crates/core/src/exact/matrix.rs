use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{rat_of, Int, QVector, Rational};
use crate::{Error, Result};

/// Dense matrix of exact rationals. Columns carry the vector semantics
/// (a basis is a list of columns); rows are exposed for inequality systems.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    // row-major
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<QVector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, QVector::dim);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.dim(), c, "ragged rows");
            data.extend_from_slice(row.coords());
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn from_columns(cols: Vec<QVector>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, QVector::dim);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.dim(), r, "ragged columns");
            for i in 0..r {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> QVector {
        QVector::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn col(&self, c: usize) -> QVector {
        QVector::new((0..self.rows).map(|r| self.at(r, c).clone()).collect())
    }

    pub fn columns(&self) -> Vec<QVector> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.at(r, c).clone());
            }
        }
        m
    }

    pub fn matvec(&self, v: &QVector) -> QVector {
        assert_eq!(v.dim(), self.cols);
        QVector::new(
            (0..self.rows)
                .map(|r| {
                    (0..self.cols).fold(Rational::zero(), |acc, c| acc + self.at(r, c) * &v[c])
                })
                .collect(),
        )
    }

    pub fn matmul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                m.set(r, c, acc);
            }
        }
        m
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rational::is_integer)
    }

    /// Gram matrix `M^T M`.
    pub fn gram(&self) -> QMatrix {
        self.transpose().matmul(self)
    }

    /// Reduced row echelon form in place; returns the pivot column per row.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for r in 0..self.rows {
            if lead >= self.cols {
                break;
            }
            // find pivot row (first non-zero in column `lead` from row r down)
            let mut prow = None;
            'search: loop {
                for i in r..self.rows {
                    if !self.at(i, lead).is_zero() {
                        prow = Some(i);
                        break 'search;
                    }
                }
                lead += 1;
                if lead >= self.cols {
                    break 'search;
                }
            }
            let Some(prow) = prow else { break };
            if prow != r {
                for c in 0..self.cols {
                    self.data.swap(prow * self.cols + c, r * self.cols + c);
                }
            }
            let inv = self.at(r, lead).recip();
            for c in 0..self.cols {
                let v = self.at(r, c) * &inv;
                self.set(r, c, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, lead).is_zero() {
                    let factor = self.at(i, lead).clone();
                    for c in 0..self.cols {
                        let v = self.at(i, c) - &factor * self.at(r, c);
                        self.set(i, c, v);
                    }
                }
            }
            pivots.push(lead);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Pivot columns of the reduced row echelon form.
    pub fn rref_pivots(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.rref_in_place()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Rows are first scaled to integers to keep the intermediate swell
    /// bounded; the accumulated scaling is divided back out at the end.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        // scale each row by the lcm of its denominators
        let mut m: Vec<Vec<Int>> = Vec::with_capacity(n);
        let mut scale = Int::one();
        for r in 0..n {
            let mut l = Int::one();
            for c in 0..n {
                l = l.lcm(self.at(r, c).denom());
            }
            let lr = rat_of(l.clone());
            m.push((0..n).map(|c| (self.at(r, c) * &lr).to_integer()).collect());
            scale *= l;
        }
        let mut sign = 1i64;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "bareiss exact division failed");
                    m[i][j] = q;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = m[n - 1][n - 1].clone() * Int::from(sign);
        Ok(Rational::new(det_int, scale))
    }

    /// Solve `M x = y` exactly; `None` when the system is inconsistent.
    /// Underdetermined systems return the solution with free variables zero.
    pub fn rref_solve(&self, y: &QVector) -> Option<QVector> {
        assert_eq!(y.dim(), self.rows, "rhs length must match row count");
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, y[r].clone());
        }
        let pivots = aug.rref_in_place();
        // inconsistent iff a pivot lands in the augmented column
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut xs: Vec<Rational> = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            xs[p] = aug.at(r, self.cols).clone();
        }
        Some(QVector::new(xs))
    }

    /// Basis of the kernel `{x : M x = 0}`, exact.
    pub fn kernel(&self) -> Vec<QVector> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.at(r, f).clone();
            }
            basis.push(QVector::new(v));
        }
        basis
    }

    /// Exact inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().take(n).any(|&p| p >= n) {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.at(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}
