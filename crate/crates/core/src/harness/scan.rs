//! Exploratory slicing-ratio scanner for balls against user-supplied
//! lattices. Reports the trend of `#_Λ(rB)^{n-1} / max_H #_Λ(rB ∩ H)^n`
//! over a radius list; the hyperplane search is bounded and recorded, and
//! no threshold is asserted.

use serde::{Deserialize, Serialize};

use crate::body::Body;
use crate::counting::{
    count, max_section_over_levels_in, primitive_normals, CountOptions,
};
use crate::exact::{format_rat, rint, to_f64, QVector, Rational};
use crate::lattice::{AffineLattice, Lattice};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlicingScanRow {
    pub r: i64,
    pub total: u64,
    pub best_normal: String,
    pub best_level: i64,
    pub best_section: u64,
    /// `total^{n-1}` (exact).
    pub lhs_power: String,
    /// `best_section^n` (exact).
    pub rhs_power: String,
    /// `total^{n-1} / best_section^n`, diagnostic only.
    pub ratio_float: f64,
    pub normal_bound: i64,
}

fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Scan `rB_n` for each `r` in `r_list`: count against `Λ` and maximize the
/// affine hyperplane section over dual normals with coordinate sup-norm at
/// most `normal_bound`.
pub fn slicing_ratio_scan(
    lat: &Lattice,
    r_list: &[i64],
    normal_bound: i64,
) -> Result<Vec<SlicingScanRow>> {
    if !lat.is_full_rank() {
        return Err(Error::NotFullRank);
    }
    if r_list.iter().any(|&r| r < 1) || normal_bound < 1 {
        return Err(Error::InvalidParam("radii and normal bound must be >= 1".into()));
    }
    let n = lat.ambient();
    let dual = lat.polar()?;
    let normals: Vec<QVector> = primitive_normals(n, normal_bound)
        .into_iter()
        .map(|w| dual.point(&w))
        .collect();
    let mut rows = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let ball = Body::ball(n, rint(r) * rint(r))?;
        let total = count(&ball, &AffineLattice::linear(lat.clone()), &CountOptions::count_only())?
            .count;
        let mut best: Option<(u64, i64, QVector)> = None;
        for a in &normals {
            let scan = max_section_over_levels_in(&ball, lat, a)?;
            let better = match &best {
                None => true,
                Some((bc, _, _)) => scan.best_count > *bc,
            };
            if better {
                best = Some((scan.best_count, scan.best_level, a.clone()));
            }
        }
        let (best_section, best_level, best_normal) =
            best.ok_or_else(|| Error::InvalidParam("no normals scanned".into()))?;
        let lhs = pow(&super::checks::big(total), n as u32 - 1);
        let rhs = pow(&super::checks::big(best_section), n as u32);
        rows.push(SlicingScanRow {
            r,
            total,
            best_normal: format!("{best_normal:?}"),
            best_level,
            best_section,
            lhs_power: format_rat(&lhs),
            rhs_power: format_rat(&rhs),
            ratio_float: to_f64(&(lhs / rhs)),
            normal_bound,
        });
    }
    Ok(rows)
}

/// The D4 checkerboard lattice, a standard non-trivial scan target.
pub fn d4_lattice() -> Lattice {
    use crate::exact::QMatrix;
    Lattice::from_basis(QMatrix::from_columns(vec![
        QVector::from_ints(&[1, 1, 0, 0]),
        QVector::from_ints(&[1, -1, 0, 0]),
        QVector::from_ints(&[0, 1, -1, 0]),
        QVector::from_ints(&[0, 0, 1, -1]),
    ]))
    .expect("independent columns")
}
