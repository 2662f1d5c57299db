//! Exact rationals and a small numeric abstraction shared by the closed forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Parses `"3/10"`, `"7"`, or a decimal such as `"0.25"` (exact).
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let mut v = Q::new(int_part.abs() * &den + frac_part, den);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// `"num/den"`, or `"num"` for integers.
pub fn fmt_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn to_f64(v: &Q) -> f64 {
    ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions). The flag is true when the result converts back to
/// exactly `x`.
pub fn rationalize(x: f64, max_den: u64) -> (Q, bool) {
    assert!(x.is_finite(), "cannot rationalize {x}");
    let neg = x < 0.0;
    let target = x.abs();
    let (mut h0, mut h1): (u128, u128) = (0, 1);
    let (mut k0, mut k1): (u128, u128) = (1, 0);
    let mut r = target;
    loop {
        let a = r.floor();
        if a > 1e18 {
            break;
        }
        let a = a as u128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as u128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - r.floor();
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    let mut v = Q::new(BigInt::from(h1), BigInt::from(k1.max(1)));
    if neg {
        v = -v;
    }
    let exact = to_f64(&v) == x;
    (v, exact)
}

/// Wrapper that serializes a rational as a `"num/den"` string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QStr(pub Q);

impl Serialize for QStr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for QStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map(QStr).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

/// Ordered field used by the closed-form curves, so the same formulas run
/// on big rationals, fixed-width rationals (fast exact sweeps) and floats.
pub trait Scalar: Clone + PartialOrd + fmt::Debug {
    fn from_int(v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Caller guarantees `o != 0`.
    fn div(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;

    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Scalar for Q {
    fn from_int(v: i64) -> Self {
        qi(v)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Scalar for Ratio<i128> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// `ceil(a / b)` for positive `b`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// `floor(a / b)` for positive `b`.
pub fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("1/3").unwrap(), q(1, 3));
        assert_eq!(parse_q(" 2/4 ").unwrap(), q(1, 2));
        assert_eq!(parse_q("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_q("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_q("3").unwrap(), qi(3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("0.").is_err());
    }

    #[test]
    fn format_round_trip() {
        assert_eq!(fmt_q(&q(2, 9)), "2/9");
        assert_eq!(fmt_q(&qi(0)), "0");
        let s = serde_json::to_string(&QStr(q(-3, 7))).unwrap();
        assert_eq!(s, "\"-3/7\"");
        let back: QStr = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, q(-3, 7));
    }

    #[test]
    fn rationalize_floats() {
        assert_eq!(rationalize(0.25, 1_000_000), (q(1, 4), true));
        let (v, exact) = rationalize(1.0 / 3.0, 1_000_000);
        assert_eq!(v, q(1, 3));
        // 1/3 rounds to the same double, so it counts as exact
        assert!(exact);
        let (_, exact) = rationalize(0.123456789123, 1000);
        assert!(!exact);
        let (v, _) = rationalize(std::f64::consts::SQRT_2 - 1.0, 1000);
        assert!(*v.denom() <= BigInt::from(1000));
        assert!((to_f64(&v) - (std::f64::consts::SQRT_2 - 1.0)).abs() < 1e-5);
    }

    #[test]
    fn integer_division_helpers() {
        assert_eq!(ceil_div(13, 3), 5);
        assert_eq!(ceil_div(12, 3), 4);
        assert_eq!(floor_div(13, 2), 6);
    }
}
