//! The rational function field `Q(z)`, plus the factored form used for
//! group generators.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Polynomial;
use super::rational::{format_rational, RatStr, Rational};
use crate::error::{Error, Result};

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, when the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    /// Largest of the numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Value at `c`.
    pub fn eval(&self, c: &Rational) -> Result<Rational> {
        let d = self.den.eval(c);
        if d.is_zero() {
            return Err(Error::Pole(format_rational(c)));
        }
        Ok(self.num.eval(c) / d)
    }

    /// Defined and nonzero at `c`.
    pub fn is_regular_unit_at(&self, c: &Rational) -> bool {
        !self.den.eval(c).is_zero() && !self.num.eval(c).is_zero()
    }

    /// `f(z + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        Self::normalized(self.num.shift(c), self.den.shift(c))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalized(n, &self.den * &self.den)
    }
}

/// `f(c)`, failing with a pole error when the denominator vanishes at `c`.
pub fn rf_eval(f: &RationalFunction, c: &Rational) -> Result<Rational> {
    f.eval(c)
}

pub fn rf_shift(f: &RationalFunction, c: &Rational) -> RationalFunction {
    f.shift(c)
}

/// Candidate order `0, 1, -1, 2, -2, ...`.
pub fn basepoint_candidates() -> impl Iterator<Item = Rational> {
    std::iter::once(0i64)
        .chain((1i64..).flat_map(|k| [k, -k]))
        .map(|k| Rational::from_integer(BigInt::from(k)))
}

/// First candidate at which every function is defined and nonzero.
///
/// Every input must be nonzero; a zero function has no such point.
pub fn choose_basepoint<'a, I>(fs: I) -> Rational
where
    I: IntoIterator<Item = &'a RationalFunction>,
{
    let fs: Vec<&RationalFunction> = fs.into_iter().collect();
    assert!(
        fs.iter().all(|f| !f.is_zero()),
        "zero function has no basepoint"
    );
    basepoint_candidates()
        .find(|c| fs.iter().all(|f| f.is_regular_unit_at(c)))
        .expect("finitely many zeros and poles")
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(n, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = &self.num.exact_div(&g1).unwrap() * &rhs.num.exact_div(&g2).unwrap();
        let d = &self.den.exact_div(&g2).unwrap() * &rhs.den.exact_div(&g1).unwrap();
        let lc = d.leading().recip();
        RationalFunction {
            num: n.scale(&lc),
            den: d.scale(&lc),
        }
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Polynomial| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RfRepr {
    num: Polynomial,
    den: Polynomial,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RfRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RfRepr::deserialize(d)?;
        RationalFunction::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}

/// `constant * prod(poly^exp)` over monic, pairwise coprime, non-constant
/// polynomials. Irreducibility of the factors is not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRationalFunction {
    constant: Rational,
    factors: Vec<(Polynomial, i64)>,
}

impl FactoredRationalFunction {
    pub fn new(constant: Rational, factors: Vec<(Polynomial, i64)>) -> Result<Self> {
        if constant.is_zero() {
            return Err(Error::Invalid(
                "factored function with zero constant".into(),
            ));
        }
        for (i, (p, e)) in factors.iter().enumerate() {
            if *e == 0 {
                return Err(Error::Invalid(format!("factor {} has exponent 0", i + 1)));
            }
            if p.is_constant() {
                return Err(Error::Invalid(format!("factor {} is constant", i + 1)));
            }
            if !p.is_monic() {
                return Err(Error::Invalid(format!(
                    "factor {} ({p}) is not monic",
                    i + 1
                )));
            }
            for (j, (q, _)) in factors.iter().enumerate().take(i) {
                if !p.gcd(q).is_constant() {
                    return Err(Error::Invalid(format!(
                        "factors {} and {} are not coprime",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(FactoredRationalFunction { constant, factors })
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn factors(&self) -> &[(Polynomial, i64)] {
        &self.factors
    }

    pub fn expand(&self) -> RationalFunction {
        let mut num = Polynomial::constant(self.constant.clone());
        let mut den = Polynomial::one();
        for (p, e) in &self.factors {
            let pp = p.pow(e.unsigned_abs() as u32);
            if *e > 0 {
                num = &num * &pp;
            } else {
                den = &den * &pp;
            }
        }
        RationalFunction::normalized(num, den)
    }
}

pub fn expand_factored(g: &FactoredRationalFunction) -> RationalFunction {
    g.expand()
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    poly: Polynomial,
    exp: i64,
}

#[derive(Serialize, Deserialize)]
struct FactoredRepr {
    constant: RatStr,
    factors: Vec<FactorRepr>,
}

impl Serialize for FactoredRationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FactoredRepr {
            constant: RatStr(self.constant.clone()),
            factors: self
                .factors
                .iter()
                .map(|(p, e)| FactorRepr {
                    poly: p.clone(),
                    exp: *e,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactoredRationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FactoredRepr::deserialize(d)?;
        FactoredRationalFunction::new(
            r.constant.0,
            r.factors.into_iter().map(|f| (f.poly, f.exp)).collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}
