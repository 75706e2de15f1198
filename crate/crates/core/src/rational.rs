//! Exact weight values: parsing, formatting and common-denominator scaling.

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Vertex weight. Always an exact rational.
pub type Weight = BigRational;

pub fn int(v: i64) -> Weight {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> Weight {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p`, `p/q` or a plain decimal such as `2.125` into an exact rational.
///
/// Decimals become a power-of-ten denominator, so `0.1` is exactly 1/10.
pub fn parse_rational(text: &str) -> Result<Weight> {
    let s = text.trim();
    let bad = || Error::BadRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = parse_int(p.trim()).ok_or_else(bad)?;
        let q: BigInt = parse_int(q.trim()).ok_or_else(bad)?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(frac) {
        return Err(bad());
    }
    let mut numer = BigInt::zero();
    for b in whole.bytes().chain(frac.bytes()) {
        numer = numer * 10 + (b - b'0') as u32;
    }
    if negative {
        numer = -numer;
    }
    let denom = num::pow(BigInt::from(10u32), frac.len());
    Ok(BigRational::new(numer, denom))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `p` for integers, `p/q` otherwise (lowest terms).
pub fn format_rational(r: &Weight) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Weight>) -> Weight {
    values.into_iter().fold(Weight::zero(), |acc, v| acc + v)
}

pub(crate) fn check_positive(weights: &[Weight]) -> Result<()> {
    for (vertex, w) in weights.iter().enumerate() {
        if !w.is_positive() {
            return Err(Error::NonPositiveWeight {
                vertex,
                value: format_rational(w),
            });
        }
    }
    Ok(())
}

/// Weights rewritten over their least common denominator.
///
/// Every weight `w_i` equals `numers[i] / denom`, so comparisons between sums
/// can be done on integers without losing exactness.
#[derive(Debug, Clone)]
pub struct Scaled {
    pub denom: BigInt,
    pub numers: Vec<BigInt>,
}

impl Scaled {
    pub fn new(weights: &[Weight]) -> Self {
        let mut denom = BigInt::one();
        for w in weights {
            if !w.denom().is_one() && !(&denom % w.denom()).is_zero() {
                denom = denom.lcm(w.denom());
            }
        }
        let numers = weights
            .iter()
            .map(|w| {
                if w.denom() == &denom {
                    w.numer().clone()
                } else {
                    w.numer() * (&denom / w.denom())
                }
            })
            .collect();
        Scaled { denom, numers }
    }

    /// Machine-word form, when every numerator and every possible subset sum
    /// fits in an `i128`.
    pub fn to_i128(&self) -> Option<Vec<i128>> {
        let n = self.numers.len().max(1) as i128;
        let limit = i128::MAX / n;
        self.numers
            .iter()
            .map(|x| x.to_i128().filter(|v| v.abs() <= limit))
            .collect()
    }

    pub fn unscale(&self, value: BigInt) -> Weight {
        BigRational::new(value, self.denom.clone())
    }
}

/// Integer types the exact scans run on.
pub trait ScanInt:
    Clone + Ord + Send + Sync + Zero + for<'a> std::ops::AddAssign<&'a Self> + for<'a> std::ops::SubAssign<&'a Self>
{
    fn double(&self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl ScanInt for i128 {
    fn double(&self) -> Self {
        self * 2
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ScanInt for BigInt {
    fn double(&self) -> Self {
        self << 1
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}


/// Serde helpers that write weights as canonical strings.
pub mod serde_str {
    use serde::Serializer;

    use super::{format_rational, Weight};

    pub fn serialize<S: Serializer>(w: &Weight, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(w))
    }

    /// `None` is written as `"inf"`.
    pub fn serialize_opt<S: Serializer>(w: &Option<Weight>, s: S) -> Result<S::Ok, S::Error> {
        match w {
            Some(w) => s.serialize_str(&format_rational(w)),
            None => s.serialize_str("inf"),
        }
    }

    pub fn serialize_vec<S: Serializer>(ws: &[Weight], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(ws.iter().map(format_rational))
    }
}
