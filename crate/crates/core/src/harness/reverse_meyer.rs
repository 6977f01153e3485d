//! Constructive reverse-Meyer procedure: produces a dual-lattice basis and
//! integer translates whose sections certify
//! `#_Λ(K)^{n-1} <= (n!)^2 4^n prod_i #_Λ(K ∩ (t_i + b_i^perp))`,
//! together with the homogeneous variant obtained from the discrete Brunn
//! bound with `k = n - 1`.
//!
//! When the lattice points of `K` span the whole space the basis comes from
//! a gauge-short basis of `Λ*` with respect to `K*`, and each translate is
//! the level maximizing the section count. Otherwise the construction
//! recurses into a lattice hyperplane containing `K ∩ Λ`, lifts the basis
//! it returns, and appends the primitive normal of that hyperplane.

use num_traits::{One, Signed};

use super::checks::big;
use super::{CheckReport, Verdict};
use crate::body::Body;
use crate::counting::{
    count_section, count_section_in, count_standard, max_section_over_levels, CountOptions,
};
use crate::exact::{format_rat, rint, solve_integer, Int, QMatrix, QVector, Rational};
use crate::lattice::{mahler_basis, Lattice};
use crate::{Error, Result};

/// Output of the constructive procedure.
#[derive(Clone, Debug)]
pub struct ReverseMeyer {
    /// Basis of `Λ*` (ambient coordinates), verified unimodular.
    pub basis: Vec<QVector>,
    /// Translates `t_i ∈ Λ`.
    pub translates: Vec<QVector>,
    /// Exact counts `#_Λ(K ∩ (t_i + b_i^perp))`.
    pub section_counts: Vec<u64>,
    pub total: u64,
    pub report: CheckReport,
}

struct Parts {
    basis: Vec<QVector>,
    translates: Vec<QVector>,
    counts: Vec<u64>,
    total: u64,
}

fn factorial(n: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 2..=n {
        acc *= rint(i as i64);
    }
    acc
}

fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Recursion over standard coordinates: the lattice is always `Z^m` here.
fn worker(body: &Body) -> Result<Parts> {
    let m = body.ambient();
    let res = count_standard(body, &CountOptions { point_limit: u64::MAX })?;
    let total = res.count;
    let pts: Vec<QVector> = res
        .points
        .expect("points retained")
        .iter()
        .map(|c| QVector::from_bigints(c))
        .collect();
    if m == 1 {
        let b = QVector::from_ints(&[1]);
        let scan = max_section_over_levels(body, &b)?;
        return Ok(Parts {
            basis: vec![b],
            translates: vec![QVector::from_ints(&[scan.best_level])],
            counts: vec![scan.best_count],
            total,
        });
    }
    // span of the lattice points of K
    let mut spanning: Vec<QVector> = Vec::new();
    let add_if_independent = |spanning: &mut Vec<QVector>, v: &QVector| {
        if v.is_zero() {
            return;
        }
        spanning.push(v.clone());
        if QMatrix::from_columns(spanning.clone()).rank() != spanning.len() {
            spanning.pop();
        }
    };
    for p in &pts {
        add_if_independent(&mut spanning, p);
    }
    let span_dim = spanning.len();

    if span_dim == m {
        // gauge-short basis of Z^m w.r.t. the polar body, translate per scan
        let polar_body = body.polar()?;
        let mb = mahler_basis(&polar_body, &Lattice::standard(m))?;
        let mut basis = Vec::new();
        let mut translates = Vec::new();
        let mut counts = Vec::new();
        for b_i in mb.vectors {
            let scan = max_section_over_levels(body, &b_i)?;
            let t = solve_integer(
                &QMatrix::from_rows(vec![b_i.clone()]),
                &QVector::from_ints(&[scan.best_level]),
            )?
            .expect("basis vectors are primitive");
            basis.push(b_i);
            translates.push(t);
            counts.push(scan.best_count);
        }
        return Ok(Parts {
            basis,
            translates,
            counts,
            total,
        });
    }

    // extend the span of K ∩ Z^m to a lattice hyperplane H
    for i in 0..m {
        if spanning.len() == m - 1 {
            break;
        }
        add_if_independent(&mut spanning, &QVector::unit(m, i));
    }
    debug_assert_eq!(spanning.len(), m - 1);
    let z = Lattice::standard(m);
    let gamma = z.primitive_sublattice(&spanning)?;
    let b_gamma = gamma.basis().clone();
    // K ∩ H in the coordinates of Γ
    let p = body.as_polytope()?;
    let rows: Vec<(QVector, Rational)> = p
        .inequality_rows()
        .iter()
        .map(|(a, rhs)| {
            let coeffs =
                QVector::new((0..m - 1).map(|j| a.dot(&b_gamma.col(j))).collect());
            (coeffs, rhs.clone())
        })
        .collect();
    let chart_body = Body::from_halfspaces(m - 1, rows)?;
    let child = worker(&chart_body)?;
    if child.total != total {
        return Err(Error::BoundViolation(
            "hyperplane recursion lost lattice points".into(),
        ));
    }
    // lift: dual basis of Γ inside H, then push along the primitive normal
    let gram_inv = b_gamma
        .gram()
        .inverse()
        .ok_or(Error::NotIndependent)?;
    let d_gamma = b_gamma.matmul(&gram_inv);
    let b_last = z.primitive_normal(&gamma.basis_vectors())?;
    let u = z.complete_corank_one(&gamma)?;
    let denom = b_last.dot(&u);
    if denom.abs() != Rational::one() {
        return Err(Error::BoundViolation(
            "primitive normal pairing with the quotient generator is not ±1".into(),
        ));
    }
    let mut basis = Vec::new();
    let mut translates = Vec::new();
    let mut counts = Vec::new();
    for i in 0..m - 1 {
        let y_amb = d_gamma.matvec(&child.basis[i]);
        let theta = y_amb.dot(&u) / &denom;
        let b_i = y_amb.sub(&b_last.scale(&theta));
        if !b_i.is_integral() {
            return Err(Error::BoundViolation(
                "lifted dual vector is not a lattice vector".into(),
            ));
        }
        let t_i = b_gamma.matvec(&child.translates[i]);
        let level = b_i.dot(&t_i).to_integer();
        let recount = count_section(body, &b_i, &level, &CountOptions::count_only())?.count;
        if recount != child.counts[i] {
            return Err(Error::BoundViolation(
                "section count changed under the hyperplane lift".into(),
            ));
        }
        basis.push(b_i);
        translates.push(t_i);
        counts.push(recount);
    }
    // the appended normal's section is the hyperplane itself
    let central = count_section(body, &b_last, &Int::from(0), &CountOptions::count_only())?.count;
    if central != total {
        return Err(Error::BoundViolation(
            "hyperplane section missed lattice points".into(),
        ));
    }
    basis.push(b_last);
    translates.push(QVector::zeros(m));
    counts.push(central);
    Ok(Parts {
        basis,
        translates,
        counts,
        total,
    })
}

/// Run the constructive procedure for `K` against a full-rank lattice.
pub fn reverse_meyer_construct(
    body: &Body,
    lat: &Lattice,
    instance: &str,
) -> Result<ReverseMeyer> {
    let report = CheckReport::new("reverse_meyer", instance);
    let n = lat.ambient();
    if !lat.is_full_rank() {
        return Err(Error::NotFullRank);
    }
    if body.ambient() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: body.ambient(),
        });
    }
    let Ok(p) = body.as_polytope() else {
        return Ok(ReverseMeyer {
            basis: vec![],
            translates: vec![],
            section_counts: vec![],
            total: 0,
            report: report.inapplicable("requires a polytope"),
        });
    };
    if !p.symmetry().origin_symmetric {
        return Ok(ReverseMeyer {
            basis: vec![],
            translates: vec![],
            section_counts: vec![],
            total: 0,
            report: report.inapplicable("requires an origin-symmetric body"),
        });
    }
    // move to lattice coordinates, where the lattice is Z^n
    let standard = lat.same_lattice(&Lattice::standard(n));
    let coords_body = if standard {
        body.clone()
    } else {
        let rows: Vec<(QVector, Rational)> = p
            .inequality_rows()
            .iter()
            .map(|(a, rhs)| {
                let coeffs =
                    QVector::new((0..n).map(|j| a.dot(&lat.basis().col(j))).collect());
                (coeffs, rhs.clone())
            })
            .collect();
        Body::from_halfspaces(n, rows)?
    };
    let parts = worker(&coords_body)?;
    let dual = lat.polar()?;
    let basis: Vec<QVector> = parts.basis.iter().map(|b| dual.point(b)).collect();
    let translates: Vec<QVector> = parts.translates.iter().map(|t| lat.point(t)).collect();
    // unimodularity: |det(b_1 .. b_n)| must equal det(Λ*)
    let det = QMatrix::from_columns(basis.clone()).determinant()?.abs();
    let det_ok = &det * lat.det_abs()? == Rational::one();
    // main inequality
    let lhs = pow(&big(parts.total), n as u32 - 1);
    let constant = pow(&factorial(n), 2) * pow(&rint(4), n as u32);
    let mut rhs = constant.clone();
    for &c in &parts.counts {
        rhs *= big(c);
    }
    // homogeneous variant via the discrete Brunn bound with k = n - 1
    let mut rhs_hom = constant * pow(&rint(2), (n * (n - 1)) as u32);
    let mut rep = report.witness("count", parts.total.to_string());
    for (i, b) in basis.iter().enumerate() {
        let central = count_section_in(body, lat, b, &Int::from(0), &CountOptions::count_only())?;
        rhs_hom *= big(central.count);
        rep = rep
            .witness(&format!("basis_{}", i + 1), format!("{b:?}"))
            .witness(&format!("translate_{}", i + 1), format!("{:?}", translates[i]))
            .witness(&format!("section_{}", i + 1), parts.counts[i].to_string())
            .witness(&format!("central_section_{}", i + 1), central.count.to_string());
    }
    rep = rep
        .witness("basis_det_times_det_lattice", format_rat(&(&det * lat.det_abs()?)))
        .witness("hom_rhs", format_rat(&rhs_hom));
    let mut rep = rep.with_sides(&lhs, &rhs);
    let hom_ok = lhs <= rhs_hom;
    rep.verdict = if lhs <= rhs && hom_ok && det_ok {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    if !det_ok {
        rep = rep.flag("constructed basis is not unimodular for the dual lattice");
    }
    if !hom_ok {
        rep = rep.flag("homogeneous variant failed");
    }
    Ok(ReverseMeyer {
        basis,
        translates,
        section_counts: parts.counts,
        total: parts.total,
        report: rep,
    })
}
