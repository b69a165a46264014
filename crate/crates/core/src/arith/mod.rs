//! Exact scalar, polynomial and rational-function arithmetic.

pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use poly::Polynomial;
pub use ratfunc::{
    choose_basepoint, expand_factored, rf_eval, rf_shift, FactoredRationalFunction,
    RationalFunction,
};
pub use rational::{format_rational, parse_rational, rat_binomial, Rational};
