//! Closed-form coset and subspace counts.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

fn pair_count_pow(i: usize, r: usize) -> BigUint {
    let c = BigUint::from(i * (i - 1) / 2);
    num_traits::pow(c, r)
}

fn check(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::Domain(format!(
            "{name} = {value}, need {name} >= {min}"
        )));
    }
    Ok(())
}

/// `sum_{i=2}^{n+1} C(i,2)^r - n + 1`: cosets containing all non-degenerate
/// solutions of `a_1 x_1 + ... + a_n x_n = 1` in a group of rank `r`.
pub fn theorem_bound(n: usize, r: usize) -> Result<BigUint> {
    check("n", n, 2)?;
    check("r", r, 1)?;
    let sum: BigUint = (2..=n + 1).map(|i| pair_count_pow(i, r)).sum();
    Ok(sum + 1u32 - BigUint::from(n))
}

/// `sum_{p=2}^{h} C(p,2)^r - h + 2`: size bound for the relation set of an
/// `h`-term system in `r` exponents.
pub fn proposition_bound(h: usize, r: usize) -> Result<BigUint> {
    check("h", h, 2)?;
    check("r", r, 1)?;
    let sum: BigUint = (2..=h).map(|p| pair_count_pow(p, r)).sum();
    Ok(sum + 2u32 - BigUint::from(h))
}

/// `sum_{i=2}^{n+1} C(i,2)^r + 2^n - 2n - 1`: proper linear subspaces
/// containing every solution outside the constant coset.
pub fn corollary_bound(n: usize, r: usize) -> Result<BigUint> {
    check("n", n, 2)?;
    check("r", r, 1)?;
    let sum: BigUint = (2..=n + 1).map(|i| pair_count_pow(i, r)).sum();
    let two_n = BigUint::one() << n;
    Ok(sum + two_n - BigUint::from(2 * n + 1))
}

/// All `I ⊂ {1..n}` with `2 <= |I| <= n-1`, in lexicographic order.
pub fn degenerate_subsets(n: usize) -> Result<Vec<Vec<usize>>> {
    check("n", n, 2)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn walk(start: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..=n {
            current.push(i);
            if current.len() >= 2 && current.len() < n {
                out.push(current.clone());
            }
            if current.len() < n - 1 {
                walk(i + 1, n, current, out);
            }
            current.pop();
        }
    }
    walk(1, n, &mut current, &mut out);
    Ok(out)
}

/// `2^n - n - 2` without enumerating.
pub fn degenerate_count(n: usize) -> Result<BigUint> {
    check("n", n, 2)?;
    Ok((BigUint::one() << n) - BigUint::from(n + 2))
}
