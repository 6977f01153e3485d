//! Exact lattice point counting: bodies, hyperplane sections, level scans,
//! projections.

mod enumerate;

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use enumerate::IneqSystem;

use crate::body::{project, Body};
use crate::exact::{
    ceil_int, integer_kernel, rat_of, solve_integer, Int, QMatrix, QVector, Rational,
};
use crate::lattice::{AffineLattice, Lattice};
use crate::{Error, Result};

/// Knobs for the counting engine.
#[derive(Clone, Debug)]
pub struct CountOptions {
    /// Retain the point list when the count stays below this threshold.
    pub point_limit: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { point_limit: 100_000 }
    }
}

impl CountOptions {
    /// Never keep points; count only.
    pub fn count_only() -> Self {
        CountOptions { point_limit: 0 }
    }
}

/// Result of one counting run. Points are integer coordinate vectors in the
/// counting lattice's basis and are retained only below the configured
/// threshold.
#[derive(Clone, Debug)]
pub struct CountResult {
    pub count: u64,
    pub points: Option<Vec<Vec<Int>>>,
    pub lattice: AffineLattice,
    pub body_dim: Option<usize>,
}

impl CountResult {
    /// Ambient positions of the retained points.
    pub fn ambient_points(&self) -> Option<Vec<QVector>> {
        let pts = self.points.as_ref()?;
        Some(
            pts.iter()
                .map(|c| {
                    self.lattice
                        .lattice
                        .point(&QVector::from_bigints(c))
                        .add(&self.lattice.shift)
                })
                .collect(),
        )
    }
}

/// Count the lattice points of `body` in the affine lattice `shift + Λ`.
pub fn count(body: &Body, lat: &AffineLattice, opts: &CountOptions) -> Result<CountResult> {
    if lat.ambient() != body.ambient() {
        return Err(Error::DimensionMismatch {
            expected: body.ambient(),
            got: lat.ambient(),
        });
    }
    let k = lat.lattice.rank();
    let result = |count: u64, points: Option<Vec<Vec<Int>>>| CountResult {
        count,
        points,
        lattice: lat.clone(),
        body_dim: body.dim(),
    };
    if body.is_empty() {
        return Ok(result(0, Some(Vec::new())));
    }
    if k == 0 {
        let inside = body.contains(&lat.shift);
        return Ok(result(
            inside as u64,
            Some(if inside { vec![vec![]] } else { vec![] }),
        ));
    }
    let basis = lat.lattice.basis();
    // dual vectors give support-based bounds on each coefficient
    let bt = basis.transpose();
    let mut lo = Vec::with_capacity(k);
    let mut hi = Vec::with_capacity(k);
    for j in 0..k {
        let d = bt
            .rref_solve(&QVector::unit(k, j))
            .ok_or(Error::NotIndependent)?;
        let off = d.dot(&lat.shift);
        match body {
            Body::Polytope(_) => {
                hi.push(body.support(&d)? - &off);
                lo.push(-body.support(&d.neg())? - &off);
            }
            Body::Ball(ball) => {
                // |<d, x>| <= r |d|; integer ceiling envelope is enough, the
                // exact quadratic membership filter runs at the leaves
                let env = crate::exact::sqrt_ceil(&(&ball.radius_sq * d.norm_sq()))?;
                hi.push(rat_of(env.clone()) - &off);
                lo.push(rat_of(-env) - &off);
            }
            Body::Empty(_) => unreachable!(),
        }
    }
    let rows: Vec<(QVector, Rational)> = match body {
        Body::Polytope(p) => p
            .inequality_rows()
            .iter()
            .map(|(a, b)| {
                let coeffs = QVector::new((0..k).map(|j| a.dot(&basis.col(j))).collect());
                (coeffs, b - a.dot(&lat.shift))
            })
            .collect(),
        _ => Vec::new(),
    };
    let Some(sys) = IneqSystem::new(k, &rows, &lo, &hi) else {
        return Ok(result(0, Some(Vec::new())));
    };
    let mut n: u64 = 0;
    let mut points: Vec<Vec<Int>> = Vec::new();
    let mut keep = true;
    let visit = |c: &[Int]| {
        n += 1;
        if keep {
            if n > opts.point_limit {
                keep = false;
                points.clear();
            } else {
                points.push(c.to_vec());
            }
        }
    };
    match body {
        Body::Ball(ball) => {
            // |shift + B c|^2 <= r^2 as an integer quadratic form:
            // c^T G c + 2 w . c + c0 <= 0, scaled to integer coefficients
            let gram = basis.gram();
            let w = bt.matvec(&lat.shift);
            let c0 = lat.shift.norm_sq() - &ball.radius_sq;
            let mut l = Int::one();
            for i in 0..k {
                l = l.lcm(w[i].denom());
                for j in 0..k {
                    l = l.lcm(gram.at(i, j).denom());
                }
            }
            l = l.lcm(c0.denom());
            let lr = rat_of(l);
            let gi: Vec<Vec<Int>> = (0..k)
                .map(|i| (0..k).map(|j| (gram.at(i, j) * &lr).to_integer()).collect())
                .collect();
            let wi: Vec<Int> = (0..k).map(|i| (&w[i] * &lr * rat_of(Int::from(2))).to_integer()).collect();
            let c0i = (c0 * &lr).to_integer();
            let filter = |c: &[Int]| {
                let mut acc = c0i.clone();
                for i in 0..k {
                    let mut row = Int::zero();
                    for j in 0..k {
                        row += &gi[i][j] * &c[j];
                    }
                    acc += (row + &wi[i]) * &c[i];
                }
                !acc.is_positive()
            };
            sys.enumerate(Some(&filter), visit);
        }
        _ => sys.enumerate(None, visit),
    }
    Ok(result(n, keep.then_some(points)))
}

/// Count against the standard lattice `Z^n`.
pub fn count_standard(body: &Body, opts: &CountOptions) -> Result<CountResult> {
    count(
        body,
        &AffineLattice::linear(Lattice::standard(body.ambient())),
        opts,
    )
}

/// The affine lattice of `{x : <b, x> = level}` inside a full-rank `Λ`,
/// for `b ∈ Λ*`. Returns `None` when the hyperplane misses `Λ`.
pub fn hyperplane_lattice_in(
    lat: &Lattice,
    b: &QVector,
    level: &Int,
) -> Result<Option<AffineLattice>> {
    if b.is_zero() {
        return Err(Error::ZeroVector);
    }
    // in lattice coordinates the condition becomes an integer functional
    let g = lat.basis().transpose().matvec(b);
    if !g.is_integral() {
        return Err(Error::NonIntegerEntries);
    }
    let row = QMatrix::from_rows(vec![g]);
    let Some(c0) = solve_integer(&row, &QVector::from_bigints(&[level.clone()]))? else {
        return Ok(None);
    };
    let ker = integer_kernel(&row)?;
    let sub_basis = if ker.is_empty() {
        QMatrix::zeros(lat.ambient(), 0)
    } else {
        lat.basis().matmul(&QMatrix::from_columns(ker))
    };
    Ok(Some(AffineLattice::new(
        Lattice::from_basis(sub_basis)?,
        lat.point(&c0),
    )?))
}

/// Count `body ∩ {x : <b, x> = level}` with respect to the hyperplane's
/// affine lattice inside `Λ`.
pub fn count_section_in(
    body: &Body,
    lat: &Lattice,
    b: &QVector,
    level: &Int,
    opts: &CountOptions,
) -> Result<CountResult> {
    match hyperplane_lattice_in(lat, b, level)? {
        None => Ok(CountResult {
            count: 0,
            points: Some(Vec::new()),
            lattice: AffineLattice::linear(Lattice::trivial(body.ambient())),
            body_dim: body.dim(),
        }),
        Some(hl) => count(body, &hl, opts),
    }
}

/// Count a hyperplane section against `Z^n`.
pub fn count_section(body: &Body, b: &QVector, level: &Int, opts: &CountOptions) -> Result<CountResult> {
    count_section_in(body, &Lattice::standard(body.ambient()), b, level, opts)
}

/// Full level profile of sections parallel to `b^perp`.
#[derive(Clone, Debug)]
pub struct SectionScan {
    pub normal: QVector,
    /// Non-empty levels only.
    pub per_level: BTreeMap<i64, u64>,
    pub best_level: i64,
    pub best_count: u64,
    pub scan_lo: i64,
    pub scan_hi: i64,
}

fn level_range(body: &Body, b: &QVector) -> Result<(Int, Int)> {
    // levels intersecting the body: [-h(-b), h(b)]
    let hi = body.support_floor(b)?;
    let lo = match body {
        Body::Polytope(_) => ceil_int(&-body.support(&b.neg())?),
        Body::Ball(_) => -body.support_floor(&b.neg())?,
        Body::Empty(_) => return Err(Error::EmptyBody),
    };
    Ok((lo, hi))
}

/// Scan all integer levels of sections parallel to `b^perp` w.r.t. `Λ` and
/// record the maximizer (ties: smallest `|level|`, then smallest level).
pub fn max_section_over_levels_in(body: &Body, lat: &Lattice, b: &QVector) -> Result<SectionScan> {
    let (lo, hi) = level_range(body, b)?;
    let lo = i64::try_from(&lo).map_err(|_| Error::InvalidParam("level range too large".into()))?;
    let hi = i64::try_from(&hi).map_err(|_| Error::InvalidParam("level range too large".into()))?;
    let mut per_level = BTreeMap::new();
    let mut best: Option<(u64, i64)> = None;
    let opts = CountOptions::count_only();
    for j in lo..=hi {
        let c = count_section_in(body, lat, b, &Int::from(j), &opts)?.count;
        if c > 0 {
            per_level.insert(j, c);
        }
        let better = match best {
            None => true,
            Some((bc, bj)) => {
                c > bc || (c == bc && (j.abs() < bj.abs() || (j.abs() == bj.abs() && j < bj)))
            }
        };
        if better {
            best = Some((c, j));
        }
    }
    let (best_count, best_level) = best.unwrap_or((0, 0));
    Ok(SectionScan {
        normal: b.clone(),
        per_level,
        best_level,
        best_count,
        scan_lo: lo,
        scan_hi: hi,
    })
}

pub fn max_section_over_levels(body: &Body, b: &QVector) -> Result<SectionScan> {
    max_section_over_levels_in(body, &Lattice::standard(body.ambient()), b)
}

/// Result of the bounded global search over primitive normals.
#[derive(Clone, Debug)]
pub struct GlobalSectionMax {
    pub normal: QVector,
    pub level: i64,
    pub count: u64,
    /// Sup-norm bound the search used.
    pub normal_bound: i64,
}

pub(crate) fn primitive_normals(n: usize, bound: i64) -> Vec<QVector> {
    // canonical representatives: first non-zero coordinate positive
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(cur: &mut Vec<i64>, i: usize, bound: i64, out: &mut Vec<QVector>) {
        if i == cur.len() {
            let mut g: i64 = 0;
            for &c in cur.iter() {
                g = g.gcd(&c);
            }
            if g != 1 {
                return;
            }
            if let Some(first) = cur.iter().find(|&&c| c != 0) {
                if *first > 0 {
                    out.push(QVector::from_ints(cur));
                }
            }
            return;
        }
        for v in -bound..=bound {
            cur[i] = v;
            rec(cur, i + 1, bound, out);
        }
        cur[i] = 0;
    }
    rec(&mut cur, 0, bound, &mut out);
    out.sort();
    out
}

/// Maximize the section count over all primitive normals with sup-norm at
/// most `bound` and all levels. Deterministic tie-breaks: larger count,
/// then lexicographically smaller normal, then the per-normal level rule.
pub fn max_section_global(body: &Body, bound: i64) -> Result<GlobalSectionMax> {
    if bound < 1 {
        return Err(Error::InvalidParam("normal bound must be >= 1".into()));
    }
    let n = body.ambient();
    let mut best: Option<GlobalSectionMax> = None;
    for b in primitive_normals(n, bound) {
        let scan = max_section_over_levels(body, &b)?;
        let better = match &best {
            None => true,
            Some(g) => scan.best_count > g.count,
        };
        if better {
            best = Some(GlobalSectionMax {
                normal: b,
                level: scan.best_level,
                count: scan.best_count,
                normal_bound: bound,
            });
        }
    }
    best.ok_or_else(|| Error::InvalidParam("empty normal enumeration".into()))
}

/// Count the projected lattice points inside `K | v^perp`.
pub fn count_projection(body: &Body, v: &QVector, opts: &CountOptions) -> Result<CountResult> {
    let proj = project(body, v)?;
    count_standard(&proj.body, opts)
}

/// Project the lattice points of `K` onto `v^perp` and count the distinct
/// images (in projected-lattice coordinates).
pub fn count_projected_points(body: &Body, v: &QVector) -> Result<CountResult> {
    let proj = project(body, v)?;
    let inner = count_standard(body, &CountOptions { point_limit: u64::MAX })?;
    let wt = proj.kernel_basis.transpose();
    let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
    for c in inner.points.as_ref().expect("points retained") {
        let img = wt.matvec(&QVector::from_bigints(c));
        seen.insert(img.to_ints().expect("integer projection coordinates"));
    }
    let points: Vec<Vec<Int>> = seen.into_iter().collect();
    Ok(CountResult {
        count: points.len() as u64,
        points: Some(points),
        lattice: AffineLattice::linear(Lattice::standard(body.ambient().saturating_sub(1))),
        body_dim: body.dim(),
    })
}

/// Exact Fubini sum over all levels; used by consistency checks.
pub fn section_sum(body: &Body, b: &QVector) -> Result<u64> {
    let (lo, hi) = level_range(body, b)?;
    let mut total = 0u64;
    let opts = CountOptions::count_only();
    let mut j = lo;
    while j <= hi {
        total += count_section(body, b, &j, &opts)?.count;
        j += 1;
    }
    Ok(total)
}
