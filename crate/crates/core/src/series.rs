//! Formal power series in `z` truncated at a fixed order, with `d/dz`.
//!
//! A series of order `M` stores the coefficients of `z^0 .. z^(M-1)`. Binary
//! operations on series of different orders truncate to the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::rational::{convolve, format_rational, RatStr, Rational};
use crate::arith::{Polynomial, RationalFunction};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Panics when `coeffs` is empty: the order must be positive.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be positive");
        TruncatedSeries { coeffs }
    }

    /// Pads or truncates `coeffs` to exactly `order` entries.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        Self::new(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    pub fn from_poly(p: &Polynomial, order: usize) -> Self {
        Self::from_coeffs(p.coeffs().to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, `None` if zero to this order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order());
        Self::new(self.coeffs[..order].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c0_inv = c0.recip();
        let m = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(m);
        out.push(c0_inv.clone());
        for n in 1..m {
            let s: Rational = (1..=n).map(|k| &self.coeffs[k] * &out[n - k]).sum();
            out.push(-s * &c0_inv);
        }
        Ok(Self::new(out))
    }

    /// `d/dz`, lowering the order by one. Requires order at least 2.
    pub fn derive(&self) -> Self {
        assert!(self.order() >= 2, "derivative needs order >= 2");
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Expansion of `f` at the origin.
    pub fn from_rational_function(f: &RationalFunction, order: usize) -> Result<Self> {
        let den = Self::from_poly(f.den(), order);
        if den.constant_term().is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        Ok(&Self::from_poly(f.num(), order) * &den.inv()?)
    }
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a + b
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a * b
}

pub fn series_inv(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.inv()
}

pub fn series_derive(a: &TruncatedSeries) -> TruncatedSeries {
    a.derive()
}

pub fn rf_to_series(f: &RationalFunction, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_rational_function(f, order)
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let m = self.order().min(rhs.order());
        TruncatedSeries::new(convolve(&self.coeffs[..m], &rhs.coeffs[..m], m))
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = Polynomial::new(self.coeffs.clone());
        write!(f, "{body} + O(z^{})", self.order())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    coeffs: Vec<RatStr>,
    order: usize,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            coeffs: self.coeffs.iter().cloned().map(RatStr).collect(),
            order: self.order(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        if r.order == 0 || r.coeffs.len() != r.order {
            return Err(serde::de::Error::custom(format!(
                "series has {} coefficients but order {}",
                r.coeffs.len(),
                r.order
            )));
        }
        Ok(TruncatedSeries::new(
            r.coeffs.into_iter().map(|q| q.0).collect(),
        ))
    }
}

/// Coefficients as canonical strings, for compact diagnostics.
pub fn coeff_strings(s: &TruncatedSeries) -> Vec<String> {
    s.coeffs.iter().map(format_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use proptest::prelude::*;

    fn s(cs: &[i64], m: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(cs.iter().map(|&c| int(c)).collect(), m)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(n), Polynomial::from_ints(d)).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(series_add(&s(&[1, 1], 4), &s(&[1, -1], 4)), s(&[2], 4));
        let a = s(&[3, 0, 5], 4);
        assert_eq!(series_add(&a, &TruncatedSeries::zero(4)), a);
        assert_eq!(
            series_add(&s(&[0, 1, 1], 3), &s(&[0, -1], 3)),
            s(&[0, 0, 1], 3)
        );
        assert_eq!(series_add(&s(&[1, 1, 1], 3), &s(&[1], 2)).order(), 2);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            series_mul(&s(&[1, 1], 4), &s(&[1, -1], 4)),
            s(&[1, 0, -1], 4)
        );
        let a = s(&[2, 7, -1], 3);
        assert_eq!(series_mul(&a, &TruncatedSeries::one(3)), a);
        assert_eq!(
            series_mul(&s(&[1, 1, 1], 3), &s(&[1, 1], 3)),
            s(&[1, 2, 2], 3)
        );
    }

    #[test]
    fn inv_examples() {
        assert_eq!(series_inv(&s(&[1, -1], 4)).unwrap(), s(&[1, 1, 1, 1], 4));
        assert_eq!(
            series_inv(&s(&[2], 3)).unwrap(),
            TruncatedSeries::constant(rat(1, 2), 3)
        );
        assert_eq!(series_inv(&s(&[0, 1], 3)), Err(Error::NotAUnit));
    }

    #[test]
    fn derive_examples() {
        assert_eq!(series_derive(&s(&[1, 2, 3], 3)), s(&[2, 6], 2));
        assert_eq!(series_derive(&s(&[5], 4)), s(&[], 3));
        assert_eq!(series_derive(&s(&[0, 0, 0, 1], 4)), s(&[0, 0, 3], 3));
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(
            rf_to_series(&rf(&[1], &[1, -1]), 3).unwrap(),
            s(&[1, 1, 1], 3)
        );
        assert_eq!(
            rf_to_series(&rf(&[0, 1], &[1, -1]), 3).unwrap(),
            s(&[0, 1, 1], 3)
        );
        assert_eq!(
            rf_to_series(&rf(&[1], &[0, 1]), 3),
            Err(Error::PoleAtOrigin)
        );
    }

    #[test]
    fn serde_checks_order() {
        let a = s(&[1, -1], 3);
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"coeffs":["1","-1","0"],"order":3}"#);
        assert_eq!(serde_json::from_str::<TruncatedSeries>(&j).unwrap(), a);
        assert!(serde_json::from_str::<TruncatedSeries>(r#"{"coeffs":["1"],"order":2}"#).is_err());
    }

    fn series_strategy(m: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-9i64..=9, 1i64..=5), m)
            .prop_map(|v| TruncatedSeries::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn unit_strategy(m: usize) -> impl Strategy<Value = TruncatedSeries> {
        (series_strategy(m), prop_oneof![-5i64..=-1, 1i64..=5]).prop_map(|(mut a, c)| {
            a.coeffs[0] = int(c);
            a
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn inverse_is_exact(a in unit_strategy(10)) {
            prop_assert_eq!(&a * &a.inv().unwrap(), TruncatedSeries::one(10));
        }

        #[test]
        fn leibniz_rule(a in series_strategy(9), b in series_strategy(9)) {
            let lhs = (&a * &b).derive();
            let rhs = &(&a.derive() * &b) + &(&a * &b.derive());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn expansion_is_multiplicative() {
        let f = rf(&[2, -1, 3], &[1, 4]);
        let g = rf(&[1, 0, 0, 5], &[3, -1, 1]);
        let m = 12;
        let fg = rf_to_series(&(&f * &g), m).unwrap();
        let prod = &rf_to_series(&f, m).unwrap() * &rf_to_series(&g, m).unwrap();
        assert_eq!(fg, prod);
        let sum = rf_to_series(&(&f + &g), m).unwrap();
        assert_eq!(
            sum,
            &rf_to_series(&f, m).unwrap() + &rf_to_series(&g, m).unwrap()
        );
    }
}
