//! The group of 1-units `1 + z Q[[z]]` and its rational powers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::rational::{format_rational, is_integral, Rational};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// A truncated series with constant term exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OnePlusSeries(TruncatedSeries);

impl OnePlusSeries {
    pub fn new(body: TruncatedSeries) -> Result<Self> {
        if !body.constant_term().is_one() {
            return Err(Error::Invalid(format!(
                "1-unit expected, constant term is {}",
                format_rational(body.constant_term())
            )));
        }
        Ok(OnePlusSeries(body))
    }

    pub fn one(order: usize) -> Self {
        OnePlusSeries(TruncatedSeries::one(order))
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn body(&self) -> &TruncatedSeries {
        &self.0
    }

    pub fn into_body(self) -> TruncatedSeries {
        self.0
    }

    pub fn mul(&self, other: &OnePlusSeries) -> OnePlusSeries {
        OnePlusSeries(&self.0 * &other.0)
    }

    pub fn inv(&self) -> OnePlusSeries {
        OnePlusSeries(self.0.inv().expect("1-units are invertible"))
    }

    /// `self^u`, with coefficients from `g h' = u g' h`:
    /// `n h_n = sum_{k=1}^{n} ((u + 1) k - n) g_k h_{n-k}`.
    pub fn pow(&self, u: &Rational) -> OnePlusSeries {
        let m = self.order();
        if u.is_zero() {
            return OnePlusSeries::one(m);
        }
        if u.is_one() {
            return self.clone();
        }
        // With u = p/q, g_k = G_k / L and h_n = H_n / ((L q)^n n!), the
        // recurrence stays in the integers:
        // H_n = sum_k ((p + q) k - n q) G_k (L q)^(k-1) (n-1)!/(n-k)! H_{n-k}.
        let p = u.numer();
        let q = u.denom();
        let pq = p + q;
        let g = self.0.coeffs();
        let l = g.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let lq = &l * q;
        let mut scaled: Vec<BigInt> = Vec::with_capacity(m);
        scaled.push(BigInt::zero());
        let mut lq_pow = BigInt::one();
        for c in &g[1..] {
            scaled.push(c.numer() * (&l / c.denom()) * &lq_pow);
            lq_pow *= &lq;
        }
        let mut big_h: Vec<BigInt> = vec![BigInt::one()];
        for n in 1..m {
            let nq = q * BigInt::from(n);
            let mut acc = BigInt::zero();
            let mut falling = BigInt::one();
            for k in 1..=n {
                if k > 1 {
                    falling *= n - k + 1;
                }
                if scaled[k].is_zero() || big_h[n - k].is_zero() {
                    continue;
                }
                let w = &pq * BigInt::from(k) - &nq;
                if !w.is_zero() {
                    acc += w * &scaled[k] * &falling * &big_h[n - k];
                }
            }
            big_h.push(acc);
        }
        let mut den = BigInt::one();
        let h: Vec<Rational> = big_h
            .into_iter()
            .enumerate()
            .map(|(n, x)| {
                if n > 0 {
                    den *= &lq * BigInt::from(n);
                }
                Rational::new(x, den.clone())
            })
            .collect();
        OnePlusSeries(TruncatedSeries::new(h))
    }
}

impl fmt::Display for OnePlusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Splits `f` with `f(0) != 0` into `f(0) * (f / f(0))`.
pub fn unit_decompose(f: &TruncatedSeries) -> Result<(Rational, OnePlusSeries)> {
    let lead = f.constant_term().clone();
    if lead.is_zero() {
        return Err(Error::NotAUnit);
    }
    let unit = OnePlusSeries(f.scale(&lead.recip()));
    Ok((lead, unit))
}

pub fn pow_u(g: &OnePlusSeries, u: &Rational) -> OnePlusSeries {
    g.pow(u)
}

/// A tuple of 1-units of a common order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesTuple(Vec<OnePlusSeries>);

impl SeriesTuple {
    pub fn new(entries: Vec<OnePlusSeries>) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::Invalid("empty series tuple".into()));
        };
        let m = first.order();
        if entries.iter().any(|e| e.order() != m) {
            return Err(Error::Invalid(
                "series tuple entries differ in order".into(),
            ));
        }
        Ok(SeriesTuple(entries))
    }

    /// The tuple `(1, ..., 1)`.
    pub fn ones(len: usize, order: usize) -> Self {
        SeriesTuple(vec![OnePlusSeries::one(order); len])
    }

    pub fn entries(&self) -> &[OnePlusSeries] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> usize {
        self.0[0].order()
    }

    /// `prod_j b_j^{u_j}`.
    pub fn pow(&self, u: &ExponentVector) -> Result<OnePlusSeries> {
        if u.len() != self.len() {
            return Err(Error::Invalid(format!(
                "exponent vector has length {}, tuple has {}",
                u.len(),
                self.len()
            )));
        }
        Ok(self
            .0
            .iter()
            .zip(u.components())
            .filter(|(_, e)| !e.is_zero())
            .fold(OnePlusSeries::one(self.order()), |acc, (b, e)| {
                acc.mul(&b.pow(e))
            }))
    }
}

pub fn tuple_pow(b: &SeriesTuple, u: &ExponentVector) -> Result<OnePlusSeries> {
    b.pow(u)
}

/// Rational exponents `u = (u_1, ..., u_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<Rational>);

impl ExponentVector {
    pub fn new(components: Vec<Rational>) -> Self {
        ExponentVector(components)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        ExponentVector(v.iter().map(|&x| crate::arith::rational::int(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        ExponentVector(vec![Rational::zero(); len])
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integral)
    }

    /// Integer components, when all of them are integers that fit in `i64`.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0
            .iter()
            .map(|q| {
                if is_integral(q) {
                    q.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn ser(cs: &[Rational], m: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(cs.to_vec(), m)
    }

    fn unit(cs: &[i64], m: usize) -> OnePlusSeries {
        OnePlusSeries::new(ser(&cs.iter().map(|&c| int(c)).collect::<Vec<_>>(), m)).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let (l, u) = unit_decompose(&ser(&[int(2), int(2)], 3)).unwrap();
        assert_eq!((l, u), (int(2), unit(&[1, 1], 3)));
        let (l, u) = unit_decompose(&ser(&[int(1), int(-1)], 3)).unwrap();
        assert_eq!((l, u), (int(1), unit(&[1, -1], 3)));
        let (l, u) = unit_decompose(&ser(&[int(3)], 3)).unwrap();
        assert_eq!((l, u), (int(3), OnePlusSeries::one(3)));
        assert_eq!(
            unit_decompose(&ser(&[int(0), int(1)], 3)),
            Err(Error::NotAUnit)
        );
    }

    #[test]
    fn pow_examples() {
        let g = unit(&[1, 1], 4);
        let half = pow_u(&g, &rat(1, 2));
        assert_eq!(
            half.body(),
            &ser(&[int(1), rat(1, 2), rat(-1, 8), rat(1, 16)], 4)
        );
        let g = unit(&[1, 3, -2, 7, 1], 5);
        assert_eq!(pow_u(&g, &int(0)), OnePlusSeries::one(5));
        assert_eq!(pow_u(&g, &int(1)), g);
    }

    #[test]
    fn tuple_pow_examples() {
        let b = SeriesTuple::new(vec![unit(&[1, 1], 4), unit(&[1, -1], 4)]).unwrap();
        assert_eq!(
            tuple_pow(&b, &ExponentVector::from_ints(&[1, 1])).unwrap(),
            unit(&[1, 0, -1], 4)
        );
        assert_eq!(
            tuple_pow(&b, &ExponentVector::zero(2)).unwrap(),
            OnePlusSeries::one(4)
        );
        let b3 = SeriesTuple::new(vec![unit(&[1, 1], 3), unit(&[1, -1], 3)]).unwrap();
        let u = ExponentVector::new(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(
            tuple_pow(&b3, &u).unwrap().body(),
            &ser(&[int(1), int(0), rat(-1, 2)], 3)
        );
        assert!(tuple_pow(&b, &ExponentVector::zero(3)).is_err());
    }

    #[test]
    fn rejects_non_units() {
        assert!(OnePlusSeries::new(ser(&[int(2)], 3)).is_err());
        assert!(SeriesTuple::new(vec![]).is_err());
        assert!(SeriesTuple::new(vec![unit(&[1], 3), unit(&[1], 4)]).is_err());
    }
}
