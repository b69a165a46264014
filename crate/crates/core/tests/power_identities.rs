//! Identities of rational powers in 1 + zQ[[z]], checked against the
//! binomial series as an independent route to the coefficients.

use num_traits::Zero;
use proptest::prelude::*;
use unitcoset::arith::rat_binomial;
use unitcoset::arith::rational::{int, rat, Rational};
use unitcoset::{pow_u, OnePlusSeries, TruncatedSeries};

/// `sum_i C(u, i) (g - 1)^i`; the terms `i >= order` vanish.
fn power_by_binomial(g: &TruncatedSeries, u: &Rational) -> TruncatedSeries {
    let m = g.order();
    let t = g - &TruncatedSeries::one(m);
    let mut acc = TruncatedSeries::one(m);
    let mut t_pow = TruncatedSeries::one(m);
    for i in 1..m {
        t_pow = &t_pow * &t;
        let b = rat_binomial(u, i);
        if !b.is_zero() {
            acc = &acc + &t_pow.scale(&b);
        }
    }
    acc
}

fn one_unit(m: usize) -> impl Strategy<Value = OnePlusSeries> {
    prop::collection::vec((-6i64..=6, 1i64..=4), m - 1).prop_map(move |v| {
        let mut cs = vec![int(1)];
        cs.extend(v.into_iter().map(|(n, d)| rat(n, d)));
        OnePlusSeries::new(TruncatedSeries::new(cs)).unwrap()
    })
}

fn exponent() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_matches_binomial_sum(g in one_unit(12), u in exponent()) {
        prop_assert_eq!(pow_u(&g, &u).into_body(), power_by_binomial(g.body(), &u));
    }

    #[test]
    fn integer_powers_are_repeated_products(g in one_unit(10)) {
        let mut acc = g.clone();
        for q in 2..=4 {
            acc = acc.mul(&g);
            prop_assert_eq!(pow_u(&g, &int(q)), acc.clone());
        }
        prop_assert_eq!(pow_u(&g, &int(-1)), g.inv());
    }

    #[test]
    fn roots_invert_powers(g in one_unit(10)) {
        for q in [2i64, 3, 5] {
            let root = pow_u(&g, &rat(1, q));
            prop_assert_eq!(pow_u(&root, &int(q)), g.clone());
        }
    }
}

#[test]
fn sqrt_of_one_plus_z() {
    let g = OnePlusSeries::new(TruncatedSeries::from_coeffs(vec![int(1), int(1)], 6)).unwrap();
    let expected = [
        rat(1, 1),
        rat(1, 2),
        rat(-1, 8),
        rat(1, 16),
        rat(-5, 128),
        rat(7, 256),
    ];
    assert_eq!(pow_u(&g, &rat(1, 2)).body().coeffs(), &expected);
}
