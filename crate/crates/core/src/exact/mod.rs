//! Exact rational scalars, vectors, and matrices shared by every module.

mod integral;
mod matrix;
mod vector;

pub use integral::{hnf, integer_kernel, solve_integer, unimodular_completion};
pub use matrix::QMatrix;
pub use vector::QVector;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational; always reduced and with positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Integer `n` as an exact rational.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub fn rat_of(n: Int) -> Rational {
    Rational::from_integer(n)
}

/// Largest integer `<= q`.
pub fn floor_int(q: &Rational) -> Int {
    q.floor().to_integer()
}

/// Smallest integer `>= q`.
pub fn ceil_int(q: &Rational) -> Int {
    q.ceil().to_integer()
}

/// Approximate value for report fields; never used in verdicts.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Nearest integer, halves rounded towards even (any fixed rule works; this
/// one is deterministic and symmetric).
pub fn round_int(q: &Rational) -> Int {
    q.round().to_integer()
}

/// Render as `p` or `p/q`.
pub fn format_rat(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `p` or `p/q` with arbitrary-precision parts.
pub fn parse_rat(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<Int> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| Error::InvalidParam(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::InvalidParam("zero denominator".into()));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
    }
}

/// Floor of sqrt(q) for `q >= 0`, exact.
///
/// Uses that an integer `k` satisfies `k <= sqrt(q)` iff `k^2 <= q`, so the
/// answer equals the integer sqrt of `floor(q)`.
pub fn sqrt_floor(q: &Rational) -> Result<Int> {
    if q.is_negative() {
        return Err(Error::InvalidParam("sqrt of negative value".into()));
    }
    let fl = floor_int(q);
    Ok(num_integer::Roots::sqrt(&fl))
}

/// Smallest integer `m >= sqrt(q)` for `q >= 0`, exact envelope.
pub fn sqrt_ceil(q: &Rational) -> Result<Int> {
    let mut m = sqrt_floor(q)?;
    while &rat_of(m.clone() * m.clone()) < q {
        m += 1;
    }
    Ok(m)
}
