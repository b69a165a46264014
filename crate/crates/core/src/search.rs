//! Brute-force solutions of `a_1 x_1 + ... + a_n x_n = 1` over a finitely
//! generated group `Gamma ⊂ (Q(z)*)^n` containing the constants.
//!
//! Every element of `Gamma` is `xi * g_1^{w_1} ... g_r^{w_r}` with a constant
//! tuple `xi`. For each integer exponent vector `w` in a box the equation
//! becomes linear in `xi`, and is solved exactly by coefficient matching.
//! Solutions sharing `w` form one `(k*)^n`-coset.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arith::linalg::{self, Matrix};
use crate::arith::{
    choose_basepoint, format_rational, FactoredRationalFunction, Polynomial, Rational,
    RationalFunction,
};
use crate::bounds::theorem_bound;
use crate::dependence::SystemInstance;
use crate::error::{Error, Result};

/// Generators of `Gamma` modulo constants, each an `n`-tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    n: usize,
    generators: Vec<Vec<FactoredRationalFunction>>,
}

impl GroupSpec {
    pub fn new(n: usize, generators: Vec<Vec<FactoredRationalFunction>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid(
                "a group needs at least one generator".into(),
            ));
        }
        if let Some(j) = generators.iter().position(|g| g.len() != n) {
            return Err(Error::Invalid(format!(
                "generator {} has {} coordinates, expected {n}",
                j + 1,
                generators[j].len()
            )));
        }
        Ok(GroupSpec { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<FactoredRationalFunction>] {
        &self.generators
    }

    /// Rows are generators; columns are (basis polynomial, coordinate) pairs.
    fn exponent_matrix(&self) -> (Matrix, usize) {
        let polys: Vec<Polynomial> = self
            .generators
            .iter()
            .flatten()
            .flat_map(|f| f.factors().iter().map(|(p, _)| p.clone()))
            .collect();
        let basis = coprime_basis(&polys);
        let ncols = basis.len() * self.n;
        let rows = self
            .generators
            .iter()
            .map(|gen| {
                let mut row = vec![Rational::zero(); ncols];
                for (i, coord) in gen.iter().enumerate() {
                    for (p, e) in coord.factors() {
                        for (b, mult) in factor_over_basis(p, &basis) {
                            row[b * self.n + i] += Rational::from_integer(BigInt::from(e * mult));
                        }
                    }
                }
                row
            })
            .collect();
        (rows, ncols)
    }

    /// An integer relation `prod_j g_j^{c_j}` = constant tuple, if any.
    pub fn dependency(&self) -> Option<Vec<BigInt>> {
        let (m, ncols) = self.exponent_matrix();
        let kernel = linalg::nullspace(&linalg::transpose(&m, ncols), self.r());
        kernel.first().map(|v| integer_direction(v))
    }
}

/// Refines monic polynomials into a pairwise coprime monic basis such that
/// each input is a product of basis elements.
pub fn coprime_basis(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut set: Vec<Polynomial> = Vec::new();
    let push = |set: &mut Vec<Polynomial>, p: Polynomial| {
        let p = p.monic();
        if !p.is_constant() && !set.contains(&p) {
            set.push(p);
        }
    };
    for p in polys {
        push(&mut set, p.clone());
    }
    'outer: loop {
        for i in 0..set.len() {
            for j in (i + 1)..set.len() {
                let g = set[i].gcd(&set[j]);
                if g.is_constant() {
                    continue;
                }
                let a = set[i].exact_div(&g).unwrap();
                let b = set[j].exact_div(&g).unwrap();
                set.remove(j);
                set.remove(i);
                for q in [g, a, b] {
                    push(&mut set, q);
                }
                continue 'outer;
            }
        }
        break;
    }
    set.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| format!("{a}").cmp(&format!("{b}")))
    });
    set
}

/// Multiplicities of basis elements in `p`.
fn factor_over_basis(p: &Polynomial, basis: &[Polynomial]) -> Vec<(usize, i64)> {
    let mut rest = p.monic();
    let mut out = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        let mut mult = 0;
        while let Some(q) = rest.exact_div(b) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((k, mult));
        }
    }
    debug_assert!(rest.is_constant(), "basis does not cover {p}");
    out
}

fn integer_direction(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Rank of `Gamma / (k*)^n` for the given generators.
pub fn group_rank(g: &GroupSpec) -> usize {
    let (m, ncols) = g.exponent_matrix();
    linalg::rank(&m, ncols)
}

/// `a_1 x_1 + ... + a_n x_n = 1` with `x` ranging over a group.
#[derive(Clone, Debug)]
pub struct EquationInstance {
    group: GroupSpec,
    coefficients: Vec<RationalFunction>,
    basepoint: Rational,
    truncation: usize,
    expanded: Vec<Vec<RationalFunction>>,
}

impl EquationInstance {
    pub fn new(
        group: GroupSpec,
        coefficients: Vec<RationalFunction>,
        truncation: usize,
    ) -> Result<Self> {
        let n = group.n();
        if n < 2 {
            return Err(Error::Invalid(format!("need n >= 2 variables, got {n}")));
        }
        if coefficients.len() != n {
            return Err(Error::Invalid(format!(
                "{} coefficients for n = {n}",
                coefficients.len()
            )));
        }
        if let Some(i) = coefficients.iter().position(RationalFunction::is_zero) {
            return Err(Error::Invalid(format!("coefficient {} is zero", i + 1)));
        }
        if truncation == 0 {
            return Err(Error::Invalid("truncation order must be positive".into()));
        }
        let expanded: Vec<Vec<RationalFunction>> = group
            .generators()
            .iter()
            .map(|g| g.iter().map(FactoredRationalFunction::expand).collect())
            .collect();
        let basepoint = choose_basepoint(coefficients.iter().chain(expanded.iter().flatten()));
        Ok(EquationInstance {
            group,
            coefficients,
            basepoint,
            truncation,
            expanded,
        })
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn r(&self) -> usize {
        self.group.r()
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coefficients(&self) -> &[RationalFunction] {
        &self.coefficients
    }

    pub fn basepoint(&self) -> &Rational {
        &self.basepoint
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Generator `j` as expanded rational functions.
    pub fn generator(&self, j: usize) -> &[RationalFunction] {
        &self.expanded[j]
    }

    /// `prod_j g_j[i]^{w_j}` for each coordinate `i`.
    pub fn monomial(&self, w: &[i64]) -> Vec<RationalFunction> {
        (0..self.n())
            .map(|i| {
                self.expanded
                    .iter()
                    .zip(w)
                    .fold(RationalFunction::one(), |acc, (g, &e)| {
                        if e == 0 {
                            acc
                        } else {
                            &acc * &g[i].powi(e).expect("generator coordinates are nonzero")
                        }
                    })
            })
            .collect()
    }

    /// SHA-256 of the canonical JSON form of the instance.
    pub fn digest(&self) -> String {
        #[derive(Serialize)]
        struct Canonical<'a> {
            n: usize,
            coefficients: &'a [RationalFunction],
            generators: &'a [Vec<FactoredRationalFunction>],
            truncation: usize,
        }
        let bytes = serde_json::to_vec(&Canonical {
            n: self.n(),
            coefficients: &self.coefficients,
            generators: self.group.generators(),
            truncation: self.truncation,
        })
        .expect("serializable");
        format!("{:x}", Sha256::digest(bytes))
    }

    /// The `h = n + 1` system `sum_i xi_i a_i A_i^u - xi_h = 0` after shifting
    /// to the basepoint and normalizing generator coordinates to 1-units.
    pub fn reduction_system(&self) -> Result<SystemInstance> {
        let c = &self.basepoint;
        let mut coefficients: Vec<RationalFunction> =
            self.coefficients.iter().map(|a| a.shift(c)).collect();
        coefficients.push(RationalFunction::constant(-Rational::one()));
        let mut tuples: Vec<Vec<RationalFunction>> = (0..self.n())
            .map(|i| {
                self.expanded
                    .iter()
                    .map(|g| {
                        let s = g[i].shift(c);
                        let v = s.eval(&Rational::zero()).expect("basepoint avoids poles");
                        s.scale(&v.recip())
                    })
                    .collect()
            })
            .collect();
        tuples.push(vec![RationalFunction::one(); self.r()]);
        SystemInstance::from_rational(coefficients, tuples, self.truncation)
    }
}

/// True when the generators are multiplicatively independent modulo
/// constants.
pub fn independence_check(inst: &EquationInstance) -> bool {
    group_rank(inst.group()) == inst.r()
}

fn require_independent(inst: &EquationInstance) -> Result<()> {
    if independence_check(inst) {
        return Ok(());
    }
    let rel = inst.group().dependency().unwrap_or_default();
    let terms: Vec<String> = rel
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| format!("g{}^{}", j + 1, c))
        .collect();
    Err(Error::Independence(format!(
        "{} is a constant tuple (rank {} < {} generators)",
        terms.join(" * "),
        group_rank(inst.group()),
        inst.r()
    )))
}

/// Constant tuples `xi` solving the equation for one exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiSet {
    Point(Vec<Rational>),
    /// `particular + span(basis)`.
    Family {
        particular: Vec<Rational>,
        basis: Vec<Vec<Rational>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub exponents: Vec<i64>,
    pub xi: XiSet,
    /// The member of `xi` used for `x`.
    pub representative: Vec<Rational>,
    pub x: Vec<RationalFunction>,
}

impl SolutionRecord {
    pub fn is_family(&self) -> bool {
        matches!(self.xi, XiSet::Family { .. })
    }
}

/// Coefficient columns of `fs` and of the constant 1 over a common
/// denominator.
fn columns_with_one(fs: &[RationalFunction]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let common = fs.iter().fold(Polynomial::one(), |acc, f| acc.lcm(f.den()));
    let cols = fs
        .iter()
        .map(|f| {
            (f.num() * &common.exact_div(f.den()).unwrap())
                .coeffs()
                .to_vec()
        })
        .collect();
    (cols, common.coeffs().to_vec())
}

fn combine(cols: &[Vec<Rational>], xi: &[Rational], mask: usize, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, col) in cols.iter().enumerate() {
        if mask & (1 << i) == 0 || xi[i].is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(col) {
            *o += &xi[i] * c;
        }
    }
    out
}

/// A linear form in `xi` (by coordinate mask) that is not identically zero on
/// the affine family `p + span(basis)`.
fn form_alive(
    cols: &[Vec<Rational>],
    p: &[Rational],
    basis: &[Vec<Rational>],
    mask: usize,
    len: usize,
) -> bool {
    let nonzero = |v: &[Rational]| combine(cols, v, mask, len).iter().any(|c| !c.is_zero());
    nonzero(p) || basis.iter().any(|b| nonzero(b))
}

fn solve_for(inst: &EquationInstance, w: &[i64]) -> Option<SolutionRecord> {
    let n = inst.n();
    let monomial = inst.monomial(w);
    let g: Vec<RationalFunction> = inst
        .coefficients
        .iter()
        .zip(&monomial)
        .map(|(a, m)| a * m)
        .collect();
    let (cols, rhs) = columns_with_one(&g);
    let len = cols.iter().map(Vec::len).chain([rhs.len()]).max().unwrap();
    let matrix: Matrix = (0..len)
        .map(|k| {
            cols.iter()
                .map(|c| c.get(k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    let mut rhs = rhs;
    rhs.resize(len, Rational::zero());
    let (p, basis) = linalg::solve_affine(&matrix, &rhs, n)?;

    // every coordinate must be nonzero somewhere on the solution set
    let singles: Vec<usize> = (0..n).map(|i| 1 << i).collect();
    if !singles
        .iter()
        .all(|&m| form_alive(&cols, &p, &basis, m, len))
    {
        return None;
    }
    let (xi, representative) = if basis.is_empty() {
        (XiSet::Point(p.clone()), p)
    } else {
        let rep = family_representative(&cols, &p, &basis, len);
        (
            XiSet::Family {
                particular: p,
                basis,
            },
            rep,
        )
    };
    let x = representative
        .iter()
        .zip(&monomial)
        .map(|(c, m)| m.scale(c))
        .collect();
    Some(SolutionRecord {
        exponents: w.to_vec(),
        xi,
        representative,
        x,
    })
}

/// First member `p + sum_j t^{j+1} b_j`, `t = 0, 1, 2, ...`, on which every
/// coordinate and every proper subsum that is not identically zero on the
/// family is nonzero.
fn family_representative(
    cols: &[Vec<Rational>],
    p: &[Rational],
    basis: &[Vec<Rational>],
    len: usize,
) -> Vec<Rational> {
    let n = cols.len();
    let full = (1usize << n) - 1;
    let live: Vec<usize> = (1..full)
        .chain((0..n).map(|i| 1 << i))
        .filter(|&m| form_alive(cols, p, basis, m, len))
        .collect();
    let limit = basis.len() * live.len() + 1;
    for t in 0..=limit {
        let t = Rational::from_integer(BigInt::from(t));
        let mut xi = p.to_vec();
        let mut power = t.clone();
        for b in basis {
            for (x, bi) in xi.iter_mut().zip(b) {
                *x += &power * bi;
            }
            power *= &t;
        }
        if live
            .iter()
            .all(|&m| combine(cols, &xi, m, len).iter().any(|c| !c.is_zero()))
        {
            return xi;
        }
    }
    unreachable!("finitely many bad parameters")
}

/// All integer vectors in `[-b, b]^r`, lexicographically.
pub fn exponent_box(r: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-b..=b).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        None => f(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(f),
    }
}

/// Solutions for every `w` in the box, ordered lexicographically by `w`.
pub fn enumerate_solutions(inst: &EquationInstance, b: u32) -> Result<Vec<SolutionRecord>> {
    enumerate_solutions_with(inst, b, None)
}

/// As [`enumerate_solutions`], on a pool of `threads` workers when given.
pub fn enumerate_solutions_with(
    inst: &EquationInstance,
    b: u32,
    threads: Option<usize>,
) -> Result<Vec<SolutionRecord>> {
    if b == 0 {
        return Err(Error::Invalid("box size must be positive".into()));
    }
    require_independent(inst)?;
    let ws = exponent_box(inst.r(), i64::from(b));
    let found: Vec<Option<SolutionRecord>> = with_threads(threads, || {
        ws.par_iter().map(|w| solve_for(inst, w)).collect()
    });
    Ok(found.into_iter().flatten().collect())
}

/// No proper subsum `sum_{i in I} a_i x_i` vanishes; for a family, none
/// vanishes identically on it.
pub fn is_nondegenerate(sol: &SolutionRecord, inst: &EquationInstance) -> bool {
    let n = inst.n();
    let full = (1usize << n) - 1;
    let subsum = |xi: &[Rational], mask: usize| -> RationalFunction {
        let monomial = inst.monomial(&sol.exponents);
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .fold(RationalFunction::zero(), |acc, i| {
                &acc + &(&inst.coefficients[i] * &monomial[i]).scale(&xi[i])
            })
    };
    match &sol.xi {
        XiSet::Point(_) => (1..full).all(|mask| {
            let s = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .fold(RationalFunction::zero(), |acc, i| {
                    &acc + &(&inst.coefficients[i] * &sol.x[i])
                });
            !s.is_zero()
        }),
        XiSet::Family { particular, basis } => (1..full).all(|mask| {
            !subsum(particular, mask).is_zero() || basis.iter().any(|b| !subsum(b, mask).is_zero())
        }),
    }
}

/// Groups records whose coordinates differ by constant factors. Classes are
/// index lists into `sols`, ordered by first member.
pub fn coset_classify(sols: &[SolutionRecord]) -> Vec<Vec<usize>> {
    let same_coset = |a: &SolutionRecord, b: &SolutionRecord| {
        a.x.len() == b.x.len()
            && a.x.iter().zip(&b.x).all(|(p, q)| match p / q {
                Ok(ratio) => ratio.as_constant().is_some(),
                Err(_) => false,
            })
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, s) in sols.iter().enumerate() {
        match classes.iter_mut().find(|c| same_coset(&sols[c[0]], s)) {
            Some(c) => c.push(k),
            None => classes.push(vec![k]),
        }
    }
    classes
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetEntry {
    pub w: Vec<i64>,
    pub representative: SolutionRecord,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReport {
    pub rank: usize,
    pub bound: BigUint,
    pub cosets: Vec<CosetEntry>,
    pub within_bound: bool,
    pub box_size: u32,
    pub digest: String,
}

impl CosetReport {
    pub fn nondegenerate_count(&self) -> usize {
        self.cosets.iter().filter(|c| c.nondegenerate).count()
    }
}

pub fn verify_bound(inst: &EquationInstance, b: u32) -> Result<CosetReport> {
    verify_bound_with(inst, b, None)
}

pub fn verify_bound_with(
    inst: &EquationInstance,
    b: u32,
    threads: Option<usize>,
) -> Result<CosetReport> {
    let records = enumerate_solutions_with(inst, b, threads)?;
    let rank = group_rank(inst.group());
    let bound = theorem_bound(inst.n(), rank)?;
    let cosets: Vec<CosetEntry> = coset_classify(&records)
        .into_iter()
        .map(|class| {
            let rep = records[class[0]].clone();
            CosetEntry {
                w: rep.exponents.clone(),
                nondegenerate: is_nondegenerate(&rep, inst),
                representative: rep,
            }
        })
        .collect();
    let count = cosets.iter().filter(|c| c.nondegenerate).count();
    Ok(CosetReport {
        rank,
        within_bound: BigUint::from(count) <= bound,
        bound,
        cosets,
        box_size: b,
        digest: inst.digest(),
    })
}

impl fmt::Display for CosetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "rank={} bound={} box={} cosets={} nondegenerate={} within_bound={}",
            self.rank,
            self.bound,
            self.box_size,
            self.cosets.len(),
            self.nondegenerate_count(),
            self.within_bound
        )?;
        writeln!(
            f,
            "{:>4}  {:<20}  {:<6}  {:<24}  x",
            "#", "w", "nondeg", "xi"
        )?;
        for (k, c) in self.cosets.iter().enumerate() {
            let w: Vec<String> = c.w.iter().map(i64::to_string).collect();
            let xi = match &c.representative.xi {
                XiSet::Point(v) => v.iter().map(format_rational).collect::<Vec<_>>().join(","),
                XiSet::Family { basis, .. } => format!("family(dim {})", basis.len()),
            };
            let x: Vec<String> = c.representative.x.iter().map(|f| f.to_string()).collect();
            writeln!(
                f,
                "{:>4}  {:<20}  {:<6}  {:<24}  {}",
                k + 1,
                format!("({})", w.join(",")),
                if c.nondegenerate { "yes" } else { "no" },
                xi,
                x.join(" ; ")
            )?;
        }
        Ok(())
    }
}

/// Exponents as `i64` when they fit.
pub fn small_exponents(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}
