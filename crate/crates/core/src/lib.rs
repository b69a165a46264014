//! Exact machinery for coset-counting bounds of unit equations over
//! rational function fields: truncated power series with rational powers,
//! Wronskian rank tests, the relation-set membership criterion, closed-form
//! bounds, and a brute-force solution enumerator.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod dependence;
pub mod error;
pub mod format;
pub mod power;
pub mod search;
pub mod series;

pub use error::{Error, Result};
pub use power::{pow_u, tuple_pow, unit_decompose, ExponentVector, OnePlusSeries, SeriesTuple};
pub use series::TruncatedSeries;
