//! Linear dependence over the constants: Wronskians, ranks, the sets
//! `V(I, t)`, and membership in the relation set `S`.
//!
//! Two rank backends exist. For rational functions under integer exponents,
//! ranks come from exact linear algebra on numerator coefficients. For
//! general rational exponents the functions are only known as truncated
//! series, and ranks come from Wronskians; a nonzero truncated Wronskian
//! proves independence, while vanishing is certified only against a degree
//! bound.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::linalg::{self, Matrix};
use crate::arith::{format_rational, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::power::{ExponentVector, OnePlusSeries, SeriesTuple};
use crate::series::TruncatedSeries;

/// Wronskian determinant `det(d^i f_j)` for `i, j < m`, exact to order
/// `M - (m - 1)` where `M` is the smallest input order.
pub fn wronskian(fs: &[TruncatedSeries]) -> TruncatedSeries {
    let m = fs.len();
    assert!(m >= 1, "wronskian of an empty family");
    let order = fs.iter().map(TruncatedSeries::order).min().unwrap();
    assert!(
        order >= m,
        "order {order} too small for a {m}x{m} wronskian"
    );
    let out_order = order - (m - 1);

    // rows[i][j] = i-th derivative of fs[j]
    let mut rows: Vec<Vec<TruncatedSeries>> = Vec::with_capacity(m);
    let mut current: Vec<TruncatedSeries> = fs.iter().map(|f| f.truncate(order)).collect();
    for i in 0..m {
        if i > 0 {
            current = current.iter().map(TruncatedSeries::derive).collect();
        }
        rows.push(current.iter().map(|f| f.truncate(out_order)).collect());
    }

    // Laplace expansion row by row over subsets of used columns.
    let mut dp: Vec<Option<TruncatedSeries>> = vec![None; 1 << m];
    dp[0] = Some(TruncatedSeries::one(out_order));
    for (k, row) in rows.iter().enumerate() {
        let mut next: Vec<Option<TruncatedSeries>> = vec![None; 1 << m];
        for mask in (0..1usize << m).filter(|s| s.count_ones() as usize == k) {
            let Some(minor) = &dp[mask] else { continue };
            if minor.is_zero() {
                continue;
            }
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (j + 1)).count_ones();
                let mut term = entry * minor;
                if inversions % 2 == 1 {
                    term = -&term;
                }
                let slot = &mut next[mask | (1 << j)];
                *slot = Some(match slot.take() {
                    Some(acc) => &acc + &term,
                    None => term,
                });
            }
        }
        dp = next;
    }
    dp[(1 << m) - 1]
        .take()
        .unwrap_or_else(|| TruncatedSeries::zero(out_order))
}

/// Numerators over a common denominator, as coefficient columns.
fn numerator_columns(fs: &[RationalFunction]) -> Vec<Polynomial> {
    let common = fs.iter().fold(Polynomial::one(), |acc, f| acc.lcm(f.den()));
    fs.iter()
        .map(|f| f.num() * &common.exact_div(f.den()).expect("lcm is a multiple"))
        .collect()
}

fn columns_to_matrix(cols: &[Vec<Rational>]) -> Matrix {
    let rows = cols.iter().map(Vec::len).max().unwrap_or(0);
    (0..rows)
        .map(|r| {
            cols.iter()
                .map(|c| c.get(r).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect()
}

/// Dimension over `Q` of the span of `fs`.
pub fn rank_exact(fs: &[RationalFunction]) -> usize {
    if fs.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Rational>> = numerator_columns(fs)
        .into_iter()
        .map(|p| p.coeffs().to_vec())
        .collect();
    linalg::rank(&columns_to_matrix(&cols), fs.len())
}

/// Numerator degree bound for the Wronskian of `h` rational functions whose
/// numerators and denominators have degree at most `d`.
pub fn conservative_degree_bound(h: usize, d: usize) -> usize {
    h * h * (d + 1)
}

/// Degree bound for the Wronskian of any subfamily of `fs`.
pub fn family_degree_bound(fs: &[RationalFunction]) -> usize {
    let d = fs.iter().map(RationalFunction::degree).max().unwrap_or(0);
    conservative_degree_bound(fs.len(), d)
}

/// Result of a Wronskian rank computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesRank {
    pub rank: usize,
    /// The vanishing Wronskians behind the rank were checked through an
    /// order beyond the supplied degree bound.
    pub certified: bool,
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1usize << n)
        .filter(move |s| s.count_ones() as usize == k)
        .map(move |s| (0..n).filter(|i| s & (1 << i) != 0).collect())
}

/// Largest `m` such that some `m`-subset has a Wronskian that is nonzero
/// within the truncation order.
pub fn rank_series(fs: &[TruncatedSeries], degree_bound: Option<usize>) -> SeriesRank {
    let n = fs.len();
    if n == 0 {
        return SeriesRank {
            rank: 0,
            certified: degree_bound.is_some(),
        };
    }
    let order = fs.iter().map(TruncatedSeries::order).min().unwrap();
    let top = n.min(order);
    let mut rank = 0;
    for m in (1..=top).rev() {
        let hit = subsets_of_size(n, m).any(|idx| {
            let sub: Vec<TruncatedSeries> = idx.iter().map(|&i| fs[i].clone()).collect();
            !wronskian(&sub).is_zero()
        });
        if hit {
            rank = m;
            break;
        }
    }
    let certified = match degree_bound {
        None => false,
        Some(_) if rank == n => true,
        // all (rank+1)-subsets were seen to vanish, each to order `order - rank`
        Some(d) => rank < top && order - rank > d,
    };
    SeriesRank { rank, certified }
}

/// A finite family of functions, either exact or as truncated series.
#[derive(Clone, Debug)]
pub enum Family {
    Rational(Vec<RationalFunction>),
    Series(Vec<TruncatedSeries>),
}

impl Family {
    pub fn len(&self) -> usize {
        match self {
            Family::Rational(v) => v.len(),
            Family::Series(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Family::Rational(_))
    }

    /// Rank of the subfamily selected by `idx`.
    pub fn rank_of(&self, idx: &[usize]) -> usize {
        match self {
            Family::Rational(v) => {
                rank_exact(&idx.iter().map(|&i| v[i].clone()).collect::<Vec<_>>())
            }
            Family::Series(v) => {
                rank_series(&idx.iter().map(|&i| v[i].clone()).collect::<Vec<_>>(), None).rank
            }
        }
    }

    /// Coefficient vectors: column `i` represents function `i`, and a vector
    /// `xi` is a relation iff `sum_i xi_i * column_i = 0`.
    fn coefficient_columns(&self) -> Vec<Vec<Rational>> {
        match self {
            Family::Rational(v) => numerator_columns(v)
                .into_iter()
                .map(|p| p.coeffs().to_vec())
                .collect(),
            Family::Series(v) => {
                let m = v.iter().map(TruncatedSeries::order).min().unwrap_or(0);
                v.iter().map(|s| s.coeffs()[..m].to_vec()).collect()
            }
        }
    }
}

/// Exact rational-function forms behind a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForms {
    pub coefficients: Vec<RationalFunction>,
    pub tuples: Vec<Vec<RationalFunction>>,
}

/// Functions `a_i * A_i^u` for `i = 1..h`: coefficients `a_i` with nonzero
/// constant term and tuples `A_i` of 1-units sharing one length `r`.
#[derive(Clone, Debug)]
pub struct SystemInstance {
    a: Vec<TruncatedSeries>,
    tuples: Vec<SeriesTuple>,
    rf_forms: Option<RationalForms>,
}

impl SystemInstance {
    pub fn new(a: Vec<TruncatedSeries>, tuples: Vec<SeriesTuple>) -> Result<Self> {
        let h = a.len();
        if h < 2 {
            return Err(Error::Invalid(format!(
                "a system needs h >= 2 terms, got {h}"
            )));
        }
        if tuples.len() != h {
            return Err(Error::Invalid(format!(
                "{h} coefficients but {} tuples",
                tuples.len()
            )));
        }
        let r = tuples[0].len();
        if tuples.iter().any(|t| t.len() != r) {
            return Err(Error::Invalid("tuples differ in length".into()));
        }
        let m = a[0].order();
        if a.iter().any(|s| s.order() != m) || tuples.iter().any(|t| t.order() != m) {
            return Err(Error::Invalid("system series differ in order".into()));
        }
        if let Some(i) = a.iter().position(|s| s.constant_term().is_zero()) {
            return Err(Error::Invalid(format!(
                "coefficient {} vanishes at 0",
                i + 1
            )));
        }
        Ok(SystemInstance {
            a,
            tuples,
            rf_forms: None,
        })
    }

    /// Builds the system from exact forms. Each tuple entry must take the
    /// value 1 at the origin.
    pub fn from_rational(
        coefficients: Vec<RationalFunction>,
        tuples: Vec<Vec<RationalFunction>>,
        order: usize,
    ) -> Result<Self> {
        let a = coefficients
            .iter()
            .map(|f| TruncatedSeries::from_rational_function(f, order))
            .collect::<Result<Vec<_>>>()?;
        let series_tuples = tuples
            .iter()
            .map(|t| {
                let entries = t
                    .iter()
                    .map(|f| OnePlusSeries::new(TruncatedSeries::from_rational_function(f, order)?))
                    .collect::<Result<Vec<_>>>()?;
                SeriesTuple::new(entries)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sys = Self::new(a, series_tuples)?;
        sys.rf_forms = Some(RationalForms {
            coefficients,
            tuples,
        });
        Ok(sys)
    }

    pub fn h(&self) -> usize {
        self.a.len()
    }

    pub fn r(&self) -> usize {
        self.tuples[0].len()
    }

    pub fn order(&self) -> usize {
        self.a[0].order()
    }

    pub fn rf_forms(&self) -> Option<&RationalForms> {
        self.rf_forms.as_ref()
    }

    fn check_len(&self, u: &ExponentVector) -> Result<()> {
        if u.len() != self.r() {
            return Err(Error::Invalid(format!(
                "exponent vector has length {}, system has r = {}",
                u.len(),
                self.r()
            )));
        }
        Ok(())
    }

    /// The exact functions `a_i A_i^u`, available for integer `u` when the
    /// system carries rational forms.
    pub fn rational_functions(&self, u: &ExponentVector) -> Option<Vec<RationalFunction>> {
        let forms = self.rf_forms.as_ref()?;
        let w = u.to_ints()?;
        forms
            .coefficients
            .iter()
            .zip(&forms.tuples)
            .map(|(a, tuple)| {
                tuple
                    .iter()
                    .zip(&w)
                    .try_fold(a.clone(), |acc, (f, &e)| Some(&acc * &f.powi(e).ok()?))
            })
            .collect()
    }

    /// The truncated series `a_i A_i^u`.
    pub fn series_functions(&self, u: &ExponentVector) -> Result<Vec<TruncatedSeries>> {
        self.check_len(u)?;
        self.a
            .iter()
            .zip(&self.tuples)
            .map(|(a, t)| Ok(a * t.pow(u)?.body()))
            .collect()
    }

    /// Exact family when possible, otherwise the truncated series.
    pub fn family(&self, u: &ExponentVector) -> Result<Family> {
        self.check_len(u)?;
        match self.rational_functions(u) {
            Some(v) => Ok(Family::Rational(v)),
            None => Ok(Family::Series(self.series_functions(u)?)),
        }
    }
}

/// `rank {a_i A_i^u : i in I} <= t`; indices in `subset` are zero-based.
pub fn v_membership(
    sys: &SystemInstance,
    u: &ExponentVector,
    subset: &[usize],
    t: usize,
) -> Result<bool> {
    if subset.is_empty() {
        return Err(Error::Invalid("V(I, t) needs a nonempty I".into()));
    }
    if let Some(&i) = subset.iter().find(|&&i| i >= sys.h()) {
        return Err(Error::Invalid(format!(
            "index {i} out of range for h = {}",
            sys.h()
        )));
    }
    if t >= subset.len() {
        return Ok(true);
    }
    Ok(sys.family(u)?.rank_of(subset) <= t)
}

fn mask_indices(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// Rank criterion for `S`: every proper split `I`, complement has
/// `rank_I + rank_complement > rank_total`.
pub fn rank_criterion(family: &Family) -> bool {
    let h = family.len();
    let full = (1usize << h) - 1;
    let total = family.rank_of(&mask_indices(full, h));
    // I and its complement give the same inequality; fix index 0 inside I.
    (1..full).filter(|m| m & 1 == 1).all(|mask| {
        let left = family.rank_of(&mask_indices(mask, h));
        let right = family.rank_of(&mask_indices(full & !mask, h));
        left + right > total
    })
}

pub fn s_membership(sys: &SystemInstance, u: &ExponentVector) -> Result<bool> {
    Ok(rank_criterion(&sys.family(u)?))
}

/// Coefficients `xi` of a relation, scaled so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVector(Vec<Rational>);

impl RelationVector {
    fn normalized(mut xi: Vec<Rational>) -> Self {
        if let Some(lead) = xi.iter().find(|x| !x.is_zero()).cloned() {
            let inv = lead.recip();
            for x in xi.iter_mut() {
                *x *= &inv;
            }
        }
        RelationVector(xi)
    }

    pub fn xi(&self) -> &[Rational] {
        &self.0
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

fn subsum(cols: &[Vec<Rational>], xi: &[Rational], mask: usize) -> Vec<Rational> {
    let len = cols.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![Rational::zero(); len];
    for (i, col) in cols.iter().enumerate() {
        if mask & (1 << i) == 0 || xi[i].is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(col) {
            if !c.is_zero() {
                *o += &xi[i] * c;
            }
        }
    }
    out
}

/// A relation `sum xi_i f_i = 0` with no vanishing proper subsum, if one
/// exists.
///
/// Existence is decided on the relation space `W`: some subsum vanishing on
/// all of `W` rules a witness out. Otherwise each proper subsum is a nonzero
/// polynomial of degree `< dim W` in `t` along `xi_t = sum_j t^j b_j`, so one
/// of the first `(dim W - 1)(2^h - 2) + 1` values of `t` avoids all of them.
pub fn find_relation(family: &Family) -> Option<RelationVector> {
    let h = family.len();
    if h < 2 {
        return None;
    }
    let cols = family.coefficient_columns();
    let basis = linalg::nullspace(&columns_to_matrix(&cols), h);
    if basis.is_empty() {
        return None;
    }
    let full = (1usize << h) - 1;
    let splits: Vec<usize> = (1..full).filter(|m| m & 1 == 1).collect();
    let vanishes = |xi: &[Rational], mask: usize| subsum(&cols, xi, mask).iter().all(Zero::is_zero);
    if splits
        .iter()
        .any(|&mask| basis.iter().all(|b| vanishes(b, mask)))
    {
        return None;
    }
    let dim = basis.len();
    let tries = (dim - 1) * (full - 1) + 1;
    for t in 1..=tries {
        let t = Rational::from_integer(BigInt::from(t));
        let mut xi = vec![Rational::zero(); h];
        let mut power = Rational::one();
        for b in &basis {
            for (x, bi) in xi.iter_mut().zip(b) {
                *x += &power * bi;
            }
            power *= &t;
        }
        if splits.iter().all(|&mask| !vanishes(&xi, mask)) {
            return Some(RelationVector::normalized(xi));
        }
    }
    None
}

pub fn find_relation_rational(fs: &[RationalFunction]) -> Option<RelationVector> {
    find_relation(&Family::Rational(fs.to_vec()))
}

pub fn find_relation_series(fs: &[TruncatedSeries]) -> Option<RelationVector> {
    find_relation(&Family::Series(fs.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::from_ints(cs)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    fn ser(cs: &[i64], m: usize) -> TruncatedSeries {
        TruncatedSeries::from_poly(&p(cs), m)
    }

    pub(crate) fn toy_system(order: usize) -> SystemInstance {
        SystemInstance::from_rational(
            vec![rf(&[1], &[1]), rf(&[1], &[1]), rf(&[-1], &[1])],
            vec![
                vec![rf(&[1, 1], &[1])],
                vec![rf(&[1, -1], &[1])],
                vec![rf(&[1], &[1])],
            ],
            order,
        )
        .unwrap()
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(wronskian(&[ser(&[1], 4), ser(&[0, 1], 4)]), ser(&[1], 3));
        assert!(wronskian(&[ser(&[1, 1], 4), ser(&[2, 2], 4)]).is_zero());
        assert_eq!(
            wronskian(&[ser(&[1, 1], 4), ser(&[1, -1], 4)]),
            ser(&[-2], 3)
        );
        // 1, z, z^2: det is 2
        let w = wronskian(&[ser(&[1], 5), ser(&[0, 1], 5), ser(&[0, 0, 1], 5)]);
        assert_eq!(w, ser(&[2], 3));
        // swapping columns flips the sign
        let w = wronskian(&[ser(&[0, 1], 5), ser(&[1], 5), ser(&[0, 0, 1], 5)]);
        assert_eq!(w, ser(&[-2], 3));
    }

    #[test]
    fn rank_exact_examples() {
        assert_eq!(rank_exact(&[rf(&[1, 1], &[1]), rf(&[2, 2], &[1])]), 1);
        assert_eq!(
            rank_exact(&[rf(&[1], &[1]), rf(&[0, 1], &[1]), rf(&[1, 1], &[1])]),
            2
        );
        assert_eq!(
            rank_exact(&[rf(&[1], &[1, -1]), rf(&[1], &[1, 1]), rf(&[1], &[1])]),
            3
        );
        assert_eq!(rank_exact(&[RationalFunction::zero()]), 0);
        assert_eq!(rank_exact(&[]), 0);
    }

    #[test]
    fn rank_series_examples() {
        let fs = [ser(&[1], 8), ser(&[0, 1], 8), ser(&[0, 0, 1], 8)];
        assert_eq!(
            rank_series(&fs, Some(2)),
            SeriesRank {
                rank: 3,
                certified: true
            }
        );
        assert_eq!(
            rank_series(&fs, None),
            SeriesRank {
                rank: 3,
                certified: false
            }
        );
        let fs = [ser(&[1, 1], 8), ser(&[2, 2], 8)];
        assert_eq!(rank_series(&fs, None).rank, 1);

        let rfs = [rf(&[1], &[1, -1]), rf(&[1], &[1, 1]), rf(&[1], &[1])];
        let d = family_degree_bound(&rfs);
        let fs: Vec<_> = rfs
            .iter()
            .map(|f| TruncatedSeries::from_rational_function(f, 32).unwrap())
            .collect();
        assert_eq!(
            rank_series(&fs, Some(d)),
            SeriesRank {
                rank: 3,
                certified: true
            }
        );
        assert_eq!(rank_series(&fs, Some(d)).rank, rank_exact(&rfs));
    }

    #[test]
    fn certification_needs_enough_order() {
        // dependent pair; the size-2 wronskian has order 5
        let fs = [ser(&[1, 1], 6), ser(&[3, 3], 6)];
        assert_eq!(
            rank_series(&fs, Some(4)),
            SeriesRank {
                rank: 1,
                certified: true
            }
        );
        assert_eq!(
            rank_series(&fs, Some(5)),
            SeriesRank {
                rank: 1,
                certified: false
            }
        );
    }

    #[test]
    fn v_membership_examples() {
        let sys = toy_system(16);
        let u1 = ExponentVector::from_ints(&[1]);
        assert!(v_membership(&sys, &u1, &[0, 1, 2], 2).unwrap());
        assert!(!v_membership(&sys, &u1, &[0, 1, 2], 1).unwrap());
        for i in 0..3 {
            assert!(v_membership(&sys, &ExponentVector::new(vec![rat(1, 3)]), &[i], 1).unwrap());
        }
        assert!(v_membership(&sys, &u1, &[], 1).is_err());
    }

    #[test]
    fn s_membership_examples() {
        let sys = toy_system(16);
        assert!(s_membership(&sys, &ExponentVector::from_ints(&[1])).unwrap());
        assert!(!s_membership(&sys, &ExponentVector::from_ints(&[2])).unwrap());
        assert!(s_membership(&sys, &ExponentVector::from_ints(&[0])).unwrap());
        assert!(!s_membership(&sys, &ExponentVector::new(vec![rat(1, 2)])).unwrap());
        assert!(s_membership(&sys, &ExponentVector::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn find_relation_examples() {
        let rel = find_relation_rational(&[rf(&[1, 1], &[1]), rf(&[1, -1], &[1]), rf(&[-1], &[1])]);
        assert_eq!(rel.unwrap().xi(), &[int(1), int(1), int(2)]);
        assert!(
            find_relation_rational(&[rf(&[1], &[1]), rf(&[0, 1], &[1]), rf(&[0, 0, 1], &[1])])
                .is_none()
        );
        assert!(
            find_relation_rational(&[rf(&[1, 1], &[1]), rf(&[2, 2], &[1]), rf(&[0, 1], &[1])])
                .is_none()
        );
        let rel = find_relation_series(&[ser(&[1, 1], 6), ser(&[1, -1], 6), ser(&[-1], 6)]);
        assert_eq!(rel.unwrap().xi(), &[int(1), int(1), int(2)]);
    }

    #[test]
    fn relation_with_two_dimensional_space() {
        // 1, 2, 3 as constants: W has dimension 2, every relation must avoid
        // vanishing pair sums
        let fs = [rf(&[1], &[1]), rf(&[2], &[1]), rf(&[3], &[1])];
        let rel = find_relation_rational(&fs).unwrap();
        let xi = rel.xi();
        let total: Rational = xi.iter().zip([1, 2, 3]).map(|(x, c)| x * int(c)).sum();
        assert!(total.is_zero());
        for mask in 1..7usize {
            let s: Rational = (0..3)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &xi[i] * int(i as i64 + 1))
                .sum();
            assert!(!s.is_zero(), "subsum {mask:b} vanishes");
        }
    }
}
