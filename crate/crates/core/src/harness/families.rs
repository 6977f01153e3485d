//! Body family generators. Vertex data follows the constructions used in
//! the checks verbatim; random generators are seeded and reproducible.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::body::Body;
use crate::exact::{rat, rint, QVector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyId {
    /// Simplex `conv{0, e1, e1 + k e2, k e3}` (lifted by unit vertices for n > 3).
    TK,
    /// Double pyramid over the cube: `conv((C_{n-1} x {0}) ∪ {± h e_n})`.
    KH,
    /// Box `(1/2)[-1,1]^{n-1} x [-k + 1/2, k - 1/2]`.
    QK,
    /// Symmetric cube `[-1, 1]^n`.
    Cube,
    /// Shrunken cube `[-(1 - 1/(2m)), 1 - 1/(2m)]^n`.
    ShrunkCube,
    /// Elongated cross-polytope `conv{± e_1, ..., ± e_{n-1}, ± h e_n}`.
    CrossH,
    /// `conv(± ([0,1]^{n-1} x {1}))`.
    Slab,
    /// `conv((C_n ∩ u^perp) ∪ {± e_n})` with `u = (1, 2, 4, ...)`.
    CubeSectionU,
    /// Symmetrized convex hull of seeded random integer points.
    RandomSym,
}

impl FamilyId {
    pub fn name(self) -> &'static str {
        match self {
            FamilyId::TK => "T_k",
            FamilyId::KH => "K_h",
            FamilyId::QK => "Q_k",
            FamilyId::Cube => "cube",
            FamilyId::ShrunkCube => "shrunk_cube",
            FamilyId::CrossH => "cross_h",
            FamilyId::Slab => "slab",
            FamilyId::CubeSectionU => "cube_section_u",
            FamilyId::RandomSym => "random_sym",
        }
    }

    pub fn parse(s: &str) -> Result<FamilyId> {
        Ok(match s {
            "T_k" => FamilyId::TK,
            "K_h" => FamilyId::KH,
            "Q_k" => FamilyId::QK,
            "cube" => FamilyId::Cube,
            "shrunk_cube" => FamilyId::ShrunkCube,
            "cross_h" => FamilyId::CrossH,
            "slab" => FamilyId::Slab,
            "cube_section_u" => FamilyId::CubeSectionU,
            "random_sym" => FamilyId::RandomSym,
            other => return Err(Error::InvalidParam(format!("unknown family: {other:?}"))),
        })
    }
}

/// A concrete family member; `body()` generates the vertices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub family: FamilyId,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_radius: Option<i64>,
}

impl FamilyInstance {
    pub fn new(family: FamilyId, n: usize) -> FamilyInstance {
        FamilyInstance {
            family,
            n,
            k: None,
            h: None,
            m: None,
            seed: None,
            sample_points: None,
            sample_radius: None,
        }
    }

    pub fn with_k(mut self, k: i64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_h(mut self, h: i64) -> Self {
        self.h = Some(h);
        self
    }

    pub fn with_m(mut self, m: i64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn describe(&self) -> String {
        let mut parts = vec![format!("n={}", self.n)];
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(h) = self.h {
            parts.push(format!("h={h}"));
        }
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(s) = self.seed {
            parts.push(format!("seed={s}"));
        }
        if let Some(p) = self.sample_points {
            parts.push(format!("s={p}"));
        }
        if let Some(r) = self.sample_radius {
            parts.push(format!("R={r}"));
        }
        format!("{}({})", self.family.name(), parts.join(","))
    }

    pub fn body(&self) -> Result<Body> {
        let n = self.n;
        let need = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| Error::InvalidParam(format!("family {} needs --{name}", self.family.name())))
        };
        match self.family {
            FamilyId::TK => {
                if n < 3 {
                    return Err(Error::InvalidParam("T_k needs n >= 3".into()));
                }
                t_simplex(n, need(self.k, "k")?)
            }
            FamilyId::KH => double_pyramid(n, need(self.h, "h")?),
            FamilyId::QK => q_box(n, need(self.k, "k")?),
            FamilyId::Cube => cube(n),
            FamilyId::ShrunkCube => shrunk_cube(n, need(self.m, "m")?),
            FamilyId::CrossH => cross_h(n, need(self.h, "h")?),
            FamilyId::Slab => slab(n),
            FamilyId::CubeSectionU => cube_section_u(n),
            FamilyId::RandomSym => {
                let seed = self
                    .seed
                    .ok_or_else(|| Error::InvalidParam("random_sym needs --seed".into()))?;
                let s = self.sample_points.unwrap_or(n + 3);
                let r = self.sample_radius.unwrap_or(default_radius(n));
                random_symmetric_polytope(n, s, r, seed)
            }
        }
    }
}

pub fn default_radius(n: usize) -> i64 {
    match n {
        0..=2 => 6,
        3 => 4,
        _ => 3,
    }
}

fn unit_pts(n: usize, signs: bool) -> Vec<QVector> {
    let mut pts = Vec::new();
    for i in 0..n {
        pts.push(QVector::unit(n, i));
        if signs {
            pts.push(QVector::unit(n, i).neg());
        }
    }
    pts
}

/// `[-1, 1]^n` as an H-polytope.
pub fn cube(n: usize) -> Result<Body> {
    let rows = (0..n)
        .flat_map(|i| {
            [
                (QVector::unit(n, i), rint(1)),
                (QVector::unit(n, i).neg(), rint(1)),
            ]
        })
        .collect();
    Body::from_halfspaces(n, rows)
}

/// Standard cross-polytope `conv{± e_i}`.
pub fn cross(n: usize) -> Result<Body> {
    Body::from_vertices(n, unit_pts(n, true))
}

/// `conv({0, e1, e1 + k e2, k e3} ∪ {e4, ..., e_n})`.
pub fn t_simplex(n: usize, k: i64) -> Result<Body> {
    if k < 1 {
        return Err(Error::InvalidParam("T_k needs k >= 1".into()));
    }
    let embed = |coords: &[i64]| {
        let mut c = coords.to_vec();
        c.resize(n, 0);
        QVector::from_ints(&c)
    };
    let mut pts = vec![
        embed(&[0, 0, 0]),
        embed(&[1, 0, 0]),
        embed(&[1, k, 0]),
        embed(&[0, 0, k]),
    ];
    for i in 3..n {
        pts.push(QVector::unit(n, i));
    }
    Body::from_vertices(n, pts)
}

/// Double pyramid `conv((C_{n-1} x {0}) ∪ {± h e_n})`.
pub fn double_pyramid(n: usize, h: i64) -> Result<Body> {
    if n < 2 || h < 1 {
        return Err(Error::InvalidParam("K_h needs n >= 2, h >= 1".into()));
    }
    let mut pts = Vec::new();
    for mask in 0..(1usize << (n - 1)) {
        let mut c: Vec<i64> = (0..n - 1)
            .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        c.push(0);
        pts.push(QVector::from_ints(&c));
    }
    let mut apex = vec![0i64; n];
    apex[n - 1] = h;
    pts.push(QVector::from_ints(&apex));
    apex[n - 1] = -h;
    pts.push(QVector::from_ints(&apex));
    Body::from_vertices(n, pts)
}

/// Box `(1/2)[-1,1]^{n-1} x [-k + 1/2, k - 1/2]`.
pub fn q_box(n: usize, k: i64) -> Result<Body> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidParam("Q_k needs n >= 1, k >= 1".into()));
    }
    let mut rows = Vec::new();
    for i in 0..n - 1 {
        rows.push((QVector::unit(n, i), rat(1, 2)));
        rows.push((QVector::unit(n, i).neg(), rat(1, 2)));
    }
    rows.push((QVector::unit(n, n - 1), rat(2 * k - 1, 2)));
    rows.push((QVector::unit(n, n - 1).neg(), rat(2 * k - 1, 2)));
    Body::from_halfspaces(n, rows)
}

/// `[-(1 - 1/(2m)), 1 - 1/(2m)]^n`.
pub fn shrunk_cube(n: usize, m: i64) -> Result<Body> {
    if m < 1 {
        return Err(Error::InvalidParam("shrunk cube needs m >= 1".into()));
    }
    let side = rat(2 * m - 1, 2 * m);
    let rows = (0..n)
        .flat_map(|i| {
            [
                (QVector::unit(n, i), side.clone()),
                (QVector::unit(n, i).neg(), side.clone()),
            ]
        })
        .collect();
    Body::from_halfspaces(n, rows)
}

/// Elongated cross-polytope `conv{± e_1, ..., ± e_{n-1}, ± h e_n}`.
pub fn cross_h(n: usize, h: i64) -> Result<Body> {
    if n < 2 || h < 1 {
        return Err(Error::InvalidParam("cross_h needs n >= 2, h >= 1".into()));
    }
    let mut pts = unit_pts(n - 1, true)
        .into_iter()
        .map(|p| {
            let mut c = p.coords().to_vec();
            c.push(rint(0));
            QVector::new(c)
        })
        .collect::<Vec<_>>();
    let mut apex = vec![0i64; n];
    apex[n - 1] = h;
    pts.push(QVector::from_ints(&apex));
    apex[n - 1] = -h;
    pts.push(QVector::from_ints(&apex));
    Body::from_vertices(n, pts)
}

/// `conv(± ([0,1]^{n-1} x {1}))`.
pub fn slab(n: usize) -> Result<Body> {
    if n < 2 {
        return Err(Error::InvalidParam("slab needs n >= 2".into()));
    }
    let mut pts = Vec::new();
    for mask in 0..(1usize << (n - 1)) {
        let mut c: Vec<i64> = (0..n - 1).map(|i| (mask >> i & 1) as i64).collect();
        c.push(1);
        let p = QVector::from_ints(&c);
        pts.push(p.neg());
        pts.push(p);
    }
    Body::from_vertices(n, pts)
}

/// `conv((C_n ∩ u^perp) ∪ {± e_n})` with `u = (1, 2, 4, ..., 2^{n-1})`.
pub fn cube_section_u(n: usize) -> Result<Body> {
    if n < 2 {
        return Err(Error::InvalidParam("cube_section_u needs n >= 2".into()));
    }
    let u = QVector::from_ints(&(0..n).map(|i| 1i64 << i).collect::<Vec<_>>());
    // C_n ∩ u^perp in ambient coordinates: cube rows plus the equality
    let mut rows = Vec::new();
    for i in 0..n {
        rows.push((QVector::unit(n, i), rint(1)));
        rows.push((QVector::unit(n, i).neg(), rint(1)));
    }
    rows.push((u.clone(), rint(0)));
    rows.push((u.neg(), rint(0)));
    let section = Body::from_halfspaces(n, rows)?;
    let mut pts = section.as_polytope()?.vertices().to_vec();
    pts.push(QVector::unit(n, n - 1));
    pts.push(QVector::unit(n, n - 1).neg());
    Body::from_vertices(n, pts)
}

/// Symmetrized hull of `s` integer points drawn uniformly from `[-r, r]^n`;
/// extra points are drawn (deterministically) until the hull is full
/// dimensional.
pub fn random_symmetric_polytope(n: usize, s: usize, r: i64, seed: u64) -> Result<Body> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<QVector> = Vec::new();
    let draw = |rng: &mut ChaCha8Rng| {
        QVector::from_ints(&(0..n).map(|_| rng.random_range(-r..=r)).collect::<Vec<_>>())
    };
    for _ in 0..s {
        let p = draw(&mut rng);
        pts.push(p.neg());
        pts.push(p);
    }
    let mut body = Body::from_vertices(n, pts.clone())?;
    let mut extra = 0;
    while body.dim() != Some(n) {
        extra += 1;
        if extra > 64 * n {
            return Err(Error::InvalidParam(
                "random symmetric hull failed to become full dimensional".into(),
            ));
        }
        let p = draw(&mut rng);
        pts.push(p.neg());
        pts.push(p);
        body = Body::from_vertices(n, pts.clone())?;
    }
    Ok(body)
}

/// Unconditional box `[-a_1, a_1] x ... x [-a_n, a_n]` with random
/// half-integer side lengths in `(0, r]`.
pub fn random_unconditional_box(n: usize, r: i64, seed: u64) -> Result<Body> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .flat_map(|i| {
            let a = rat(rng.random_range(1..=2 * r), 2);
            [
                (QVector::unit(n, i), a.clone()),
                (QVector::unit(n, i).neg(), a),
            ]
        })
        .collect();
    Body::from_halfspaces(n, rows)
}

/// Hull of `s` random integer points in `[0, r]^2`; redrawn until it is a
/// genuine polygon.
pub fn random_lattice_polygon(s: usize, r: i64, seed: u64) -> Result<Body> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<QVector> = (0..s)
            .map(|_| {
                QVector::from_ints(&[rng.random_range(0..=r), rng.random_range(0..=r)])
            })
            .collect();
        let body = Body::from_vertices(2, pts)?;
        if body.dim() == Some(2) {
            return Ok(body);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_standard, CountOptions};

    fn n_points(b: &Body) -> u64 {
        count_standard(b, &CountOptions::count_only()).unwrap().count
    }

    #[test]
    fn family_closed_forms() {
        for k in [1i64, 2, 10] {
            assert_eq!(n_points(&t_simplex(3, k).unwrap()), 2 * (k as u64 + 1));
        }
        for (n, h) in [(3usize, 5i64), (4, 20)] {
            assert_eq!(
                n_points(&double_pyramid(n, h).unwrap()),
                3u64.pow(n as u32 - 1) + 2 * h as u64
            );
        }
        for (n, k) in [(2usize, 3i64), (3, 5), (4, 2)] {
            assert_eq!(n_points(&q_box(n, k).unwrap()), 2 * k as u64 - 1);
        }
        for (n, m) in [(2usize, 2i64), (3, 3)] {
            assert_eq!(n_points(&shrunk_cube(n, m).unwrap()), 1);
            let dilated = shrunk_cube(n, m).unwrap().dilate(&rint(m)).unwrap();
            assert_eq!(n_points(&dilated), ((2 * m - 1) as u64).pow(n as u32));
        }
        assert_eq!(n_points(&cross_h(2, 7).unwrap()), 2 * 7 + 3);
    }

    #[test]
    fn lifted_simplex_counts() {
        // conv(T_k ∪ {e4}): adds only the new vertex
        let k = 4;
        assert_eq!(n_points(&t_simplex(4, k).unwrap()), 2 * (k as u64 + 1) + 1);
    }

    #[test]
    fn cube_section_u_structure() {
        let b = cube_section_u(3).unwrap();
        assert_eq!(b.dim(), Some(3));
        assert!(b.symmetry().origin_symmetric);
        // only lattice points are 0 and ± e_n
        assert_eq!(n_points(&b), 3);
    }

    #[test]
    fn random_bodies_are_symmetric_and_reproducible() {
        let a = random_symmetric_polytope(3, 5, 4, 99).unwrap();
        let b = random_symmetric_polytope(3, 5, 4, 99).unwrap();
        assert_eq!(a, b);
        assert!(a.symmetry().origin_symmetric);
        assert_eq!(a.dim(), Some(3));
        let c = random_symmetric_polytope(3, 5, 4, 100).unwrap();
        assert!(a != c || n_points(&a) == n_points(&c));
    }

    #[test]
    fn random_boxes_are_unconditional() {
        let b = random_unconditional_box(3, 3, 7).unwrap();
        assert!(b.symmetry().unconditional);
    }

    #[test]
    fn instance_descriptions() {
        let inst = FamilyInstance::new(FamilyId::KH, 3).with_h(100);
        assert_eq!(inst.describe(), "K_h(n=3,h=100)");
        assert_eq!(FamilyId::parse("K_h").unwrap(), FamilyId::KH);
        assert!(FamilyId::parse("nope").is_err());
    }
}
