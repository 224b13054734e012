//! Exact computation with a nonarchimedean ordered field of truncated
//! Puiseux series: its ultrametric balls and ball cuts, the orderings and
//! R-places of `K(x)` those cuts induce, real root counting over the field,
//! and cut projections along branches of plane curves.

pub mod curve;
pub mod cuts;
pub mod error;
pub mod expr;
pub mod orderings;
pub mod poly;
pub mod realroots;
pub mod series;
pub mod ultrametric;

pub use error::{Error, Result};
pub use series::{Exponent, GroupMode, Precision, Rat, Series, StdPart, Valuation};
