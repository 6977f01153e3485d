//! Recursive integer point enumeration over rational inequality systems.
//!
//! Variables are scanned in coordinate order, outermost first; per depth the
//! admissible interval is derived exactly from every row using interval
//! bounds for the not-yet-fixed variables, so the innermost interval is
//! sharp. Points come out in ascending lexicographic order, independent of
//! anything but the input system.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{ceil_int, floor_int, rat_of, Int, QVector, Rational};

pub(crate) struct IneqSystem {
    k: usize,
    rows: Vec<IntRow>,
    box_lo: Vec<Int>,
    box_hi: Vec<Int>,
}

struct IntRow {
    coeffs: Vec<Int>,
    rhs: Int,
    /// Index of the last non-zero coefficient, if any.
    last_nz: Option<usize>,
    /// suffix_min[j] = sum over i >= j of min(coeffs[i] * lo_i, coeffs[i] * hi_i)
    suffix_min: Vec<Int>,
}

impl IneqSystem {
    /// Build from rational rows `a . c <= b` and rational variable bounds.
    /// Returns `None` when a bound interval is empty.
    pub(crate) fn new(
        k: usize,
        rows: &[(QVector, Rational)],
        lo: &[Rational],
        hi: &[Rational],
    ) -> Option<IneqSystem> {
        let box_lo: Vec<Int> = lo.iter().map(ceil_int).collect();
        let box_hi: Vec<Int> = hi.iter().map(floor_int).collect();
        if box_lo.iter().zip(&box_hi).any(|(l, h)| l > h) {
            return None;
        }
        let mut int_rows = Vec::with_capacity(rows.len());
        for (a, b) in rows {
            // scale to integers
            let mut l = Int::one();
            for c in a.coords() {
                l = l.lcm(c.denom());
            }
            l = l.lcm(b.denom());
            let lr = rat_of(l);
            let coeffs: Vec<Int> = a.coords().iter().map(|c| (c * &lr).to_integer()).collect();
            let rhs = (b * &lr).floor().to_integer();
            let last_nz = coeffs.iter().rposition(|c| !c.is_zero());
            let mut suffix_min = vec![Int::zero(); k + 1];
            for j in (0..k).rev() {
                let lo_c = &coeffs[j] * &box_lo[j];
                let hi_c = &coeffs[j] * &box_hi[j];
                suffix_min[j] = &suffix_min[j + 1] + lo_c.min(hi_c);
            }
            int_rows.push(IntRow {
                coeffs,
                rhs,
                last_nz,
                suffix_min,
            });
        }
        Some(IneqSystem {
            k,
            rows: int_rows,
            box_lo,
            box_hi,
        })
    }

    /// Enumerate all integer points, applying an optional exact membership
    /// filter at the leaves (used for quadratic ball constraints).
    pub(crate) fn enumerate(
        &self,
        filter: Option<&dyn Fn(&[Int]) -> bool>,
        mut visit: impl FnMut(&[Int]),
    ) {
        // rows with no variables at all act as global feasibility
        for row in &self.rows {
            if row.last_nz.is_none() && row.rhs.is_negative() {
                return;
            }
        }
        if self.k == 0 {
            let empty: [Int; 0] = [];
            if filter.is_none_or(|f| f(&empty)) {
                visit(&[]);
            }
            return;
        }
        let residuals: Vec<Int> = self.rows.iter().map(|r| r.rhs.clone()).collect();
        let mut prefix: Vec<Int> = Vec::with_capacity(self.k);
        self.recurse(0, &residuals, &mut prefix, filter, &mut visit);
    }

    fn recurse(
        &self,
        depth: usize,
        residuals: &[Int],
        prefix: &mut Vec<Int>,
        filter: Option<&dyn Fn(&[Int]) -> bool>,
        visit: &mut impl FnMut(&[Int]),
    ) {
        let mut lo = self.box_lo[depth].clone();
        let mut hi = self.box_hi[depth].clone();
        // Row bounds. At a row's last variable suffix_min is zero and the
        // bound is exact, so rows never need re-checking afterwards.
        for (r, row) in self.rows.iter().enumerate() {
            if row.last_nz < Some(depth) {
                debug_assert!(!residuals[r].is_negative());
                continue;
            }
            let a = &row.coeffs[depth];
            if a.is_zero() {
                continue;
            }
            let slack = &residuals[r] - &row.suffix_min[depth + 1];
            if a.is_positive() {
                let bound = slack.div_floor(a);
                if bound < hi {
                    hi = bound;
                }
            } else {
                let bound = slack.div_ceil(a);
                if bound > lo {
                    lo = bound;
                }
            }
            if lo > hi {
                return;
            }
        }
        if lo > hi {
            return;
        }
        let mut c = lo.clone();
        // residuals after fixing c, updated incrementally while scanning
        let mut local: Vec<Int> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| &residuals[r] - &row.coeffs[depth] * &c)
            .collect();
        while c <= hi {
            prefix.push(c.clone());
            if depth + 1 == self.k {
                if filter.is_none_or(|f| f(prefix)) {
                    visit(prefix);
                }
            } else {
                self.recurse(depth + 1, &local, prefix, filter, visit);
            }
            prefix.pop();
            for (r, row) in self.rows.iter().enumerate() {
                if !row.coeffs[depth].is_zero() {
                    local[r] -= &row.coeffs[depth];
                }
            }
            c += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};

    fn collect(sys: &IneqSystem) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        sys.enumerate(None, |p| {
            out.push(p.iter().map(|c| i64::try_from(c).unwrap()).collect())
        });
        out
    }

    #[test]
    fn box_enumeration_is_lexicographic() {
        let sys = IneqSystem::new(2, &[], &[rint(-1), rint(0)], &[rint(0), rint(1)]).unwrap();
        assert_eq!(
            collect(&sys),
            vec![vec![-1, 0], vec![-1, 1], vec![0, 0], vec![0, 1]]
        );
    }

    #[test]
    fn triangle_constraint() {
        // x + y <= 2 in [0, 2]^2
        let rows = vec![(QVector::from_ints(&[1, 1]), rint(2))];
        let sys = IneqSystem::new(2, &rows, &[rint(0), rint(0)], &[rint(2), rint(2)]).unwrap();
        assert_eq!(collect(&sys).len(), 6);
    }

    #[test]
    fn rational_rows_floor_correctly() {
        // 2x <= 3 means x <= 1
        let rows = vec![(QVector::from_ints(&[2]), rint(3))];
        let sys = IneqSystem::new(1, &rows, &[rint(-5)], &[rint(5)]).unwrap();
        assert_eq!(collect(&sys), (-5..=1).map(|v| vec![v]).collect::<Vec<_>>());
        // x <= 1/2 means x <= 0
        let rows = vec![(QVector::from_ints(&[1]), rat(1, 2))];
        let sys = IneqSystem::new(1, &rows, &[rint(-2)], &[rint(2)]).unwrap();
        assert_eq!(collect(&sys), (-2..=0).map(|v| vec![v]).collect::<Vec<_>>());
    }

    #[test]
    fn infeasible_constant_row() {
        let rows = vec![(QVector::from_ints(&[0, 0]), rint(-1))];
        let sys = IneqSystem::new(2, &rows, &[rint(0), rint(0)], &[rint(1), rint(1)]).unwrap();
        assert!(collect(&sys).is_empty());
    }

    #[test]
    fn leaf_filter_applies() {
        let sys = IneqSystem::new(1, &[], &[rint(-3)], &[rint(3)]).unwrap();
        let mut out = Vec::new();
        let filter = |p: &[Int]| p[0].clone() * p[0].clone() <= Int::from(4);
        sys.enumerate(Some(&filter), |p| out.push(p[0].clone()));
        assert_eq!(out.len(), 5); // -2..=2
    }
}
