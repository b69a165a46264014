//! Scalars: exact rationals over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of the constant field, always stored fully reduced.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Generalized binomial coefficient `u (u-1) ... (u-i+1) / i!`.
pub fn rat_binomial(u: &Rational, i: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..i {
        let j = Rational::from_integer(BigInt::from(j));
        acc = acc * (u - &j) / (&j + Rational::one());
    }
    acc
}

/// Canonical text form: `p` or `p/q`, with an ASCII leading minus.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, `-p/q`; the Unicode minus sign is accepted too.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// True when `q` is an integer.
pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn abs_height(q: &Rational) -> BigInt {
    q.numer().abs().max(q.denom().clone())
}

/// Clears denominators: returns `(d, v)` with `xs[i] = v[i] / d` and `d` the lcm
/// of the denominators.
pub fn clear_denominators(xs: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let d = xs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let v = xs.iter().map(|q| q.numer() * (&d / q.denom())).collect();
    (d, v)
}

/// Truncated product of two rational sequences, computed over a common
/// denominator so that the inner loop is gcd-free.
pub fn convolve(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let (da, ia) = clear_denominators(a);
    let (db, ib) = clear_denominators(b);
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in ia.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in ib.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    let d = da * db;
    out.into_iter()
        .map(|n| Rational::new(n, d.clone()))
        .collect()
}

/// Serde wrapper: writes canonical strings, reads strings or JSON integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatStr(pub Rational);

impl Serialize for RatStr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RatStr;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RatStr, E> {
                parse_rational(v).map(RatStr).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RatStr, E> {
                Ok(RatStr(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RatStr, E> {
                Ok(RatStr(Rational::from_integer(BigInt::from(v))))
            }
        }
        d.deserialize_any(V)
    }
}

impl From<Rational> for RatStr {
    fn from(q: Rational) -> Self {
        RatStr(q)
    }
}
