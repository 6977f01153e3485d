//! Seeded random search for extremal instances of the conjectured ratios.
//! The fuzzer never asserts a conjecture; it keeps a deterministic
//! leaderboard of the worst cases seen.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::checks::{big, npoints};
use super::families::{
    default_radius, random_lattice_polygon, random_symmetric_polytope,
};
use crate::body::Body;
use crate::counting::{count_section, CountOptions};
use crate::exact::{format_rat, rat, rint, to_f64, Int, QVector, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FuzzTarget {
    /// `prod_i #(K ∩ e_i^perp) / #(K)^{n-1}` on random symmetric bodies;
    /// conjectured supremum `3^{n-1}`.
    MeyerRatio,
    /// `#(K + t) / #(K)` with `t = (1/2, ..., 1/2, 0)`; conjectured bound
    /// `2^{n-2}` for symmetric lattice polytopes.
    Translation,
    /// `#(P + t) / #(P)` for planar lattice polygons and random rational
    /// translates; bounded by 1.
    Wills,
    /// `#(2K) / (3^n #(K))` on random symmetric bodies; conjectured bound 1.
    Dilate,
}

impl FuzzTarget {
    pub fn name(self) -> &'static str {
        match self {
            FuzzTarget::MeyerRatio => "meyer_ratio",
            FuzzTarget::Translation => "translation",
            FuzzTarget::Wills => "wills",
            FuzzTarget::Dilate => "dilate",
        }
    }

    pub fn parse(s: &str) -> Result<FuzzTarget> {
        Ok(match s {
            "meyer_ratio" => FuzzTarget::MeyerRatio,
            "translation" => FuzzTarget::Translation,
            "wills" => FuzzTarget::Wills,
            "dilate" => FuzzTarget::Dilate,
            other => return Err(Error::InvalidParam(format!("unknown fuzz target: {other:?}"))),
        })
    }

    /// The conjectured/known reference value the ratio is probing.
    pub fn reference(self, n: usize) -> String {
        match self {
            FuzzTarget::MeyerRatio => format!("3^{}", n - 1),
            FuzzTarget::Translation => format!("2^{}", n.saturating_sub(2)),
            FuzzTarget::Wills => "1".into(),
            FuzzTarget::Dilate => "1".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FuzzEntry {
    pub ratio: String,
    pub ratio_float: f64,
    pub seed: u64,
    pub instance: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Leaderboard {
    pub target: String,
    pub n: usize,
    pub budget: u64,
    pub base_seed: u64,
    pub reference: String,
    pub entries: Vec<FuzzEntry>,
}

fn ratio_of(target: FuzzTarget, n: usize, sub_seed: u64) -> Result<(Rational, String)> {
    let opts = CountOptions::count_only();
    match target {
        FuzzTarget::MeyerRatio => {
            let body = random_symmetric_polytope(n, n + 3, default_radius(n), sub_seed)?;
            let total = npoints(&body)?;
            let mut prod = Rational::from_integer(1.into());
            for i in 0..n {
                prod *= big(count_section(&body, &QVector::unit(n, i), &Int::from(0), &opts)?.count);
            }
            let mut denom = Rational::from_integer(1.into());
            for _ in 0..n - 1 {
                denom *= big(total);
            }
            Ok((prod / denom, format!("random_sym(n={n},seed={sub_seed})")))
        }
        FuzzTarget::Translation => {
            let body = random_symmetric_polytope(n, n + 3, default_radius(n), sub_seed)?;
            let mut t = vec![rat(1, 2); n];
            t[n - 1] = rint(0);
            let moved = body.translate(&QVector::new(t))?;
            let ratio = big(npoints(&moved)?) / big(npoints(&body)?);
            Ok((ratio, format!("random_sym(n={n},seed={sub_seed})+half")))
        }
        FuzzTarget::Wills => {
            if n != 2 {
                return Err(Error::InvalidParam("wills target is planar (n = 2)".into()));
            }
            let body = random_lattice_polygon(6, 6, sub_seed)?;
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed ^ 0x9e3779b97f4a7c15);
            let den = rng.random_range(2..=8);
            let t = QVector::new(vec![
                rat(rng.random_range(0..den), den),
                rat(rng.random_range(0..den), den),
            ]);
            let moved = body.translate(&t)?;
            let ratio = big(npoints(&moved)?) / big(npoints(&body)?);
            Ok((ratio, format!("polygon(seed={sub_seed},t={t:?})")))
        }
        FuzzTarget::Dilate => {
            let body = random_symmetric_polytope(n, n + 3, default_radius(n), sub_seed)?;
            let doubled = body.dilate(&rint(2))?;
            let mut denom = big(npoints(&body)?);
            for _ in 0..n {
                denom *= rint(3);
            }
            Ok((
                big(npoints(&doubled)?) / denom,
                format!("random_sym(n={n},seed={sub_seed})x2"),
            ))
        }
    }
}

/// Evaluate `budget` seeded instances of the target ratio and keep the
/// `keep` largest; deterministic for a fixed `(seed, budget)`.
pub fn fuzz_extremal(
    target: FuzzTarget,
    n: usize,
    budget: u64,
    seed: u64,
    keep: usize,
) -> Result<Leaderboard> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sub_seeds: Vec<u64> = (0..budget).map(|_| rng.random()).collect();
    let mut scored: Vec<(Rational, u64, String)> = Vec::with_capacity(budget as usize);
    for sub in sub_seeds {
        let (ratio, instance) = ratio_of(target, n, sub)?;
        scored.push((ratio, sub, instance));
    }
    scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.2.cmp(&b.2)));
    scored.truncate(keep);
    Ok(Leaderboard {
        target: target.name().to_string(),
        n,
        budget,
        base_seed: seed,
        reference: target.reference(n),
        entries: scored
            .into_iter()
            .map(|(ratio, sub, instance)| FuzzEntry {
                ratio_float: to_f64(&ratio),
                ratio: format_rat(&ratio),
                seed: sub,
                instance,
            })
            .collect(),
    })
}

/// Ratio of one explicitly supplied body for the translation probe; used by
/// tests pinning the extremal families.
pub fn translation_ratio(body: &Body, t: &QVector) -> Result<Rational> {
    let moved = body.translate(t)?;
    Ok(big(npoints(&moved)?) / big(npoints(body)?))
}
