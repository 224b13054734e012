//! Truncated generalized Puiseux series over the rationals.
//!
//! Elements of the base field `K` are series in the infinitesimal `eps` with
//! rational exponents. A second infinitesimal `t` (exponent `(0, 1)`) is used
//! to realize cuts of `K` inside an ordered extension; [`GroupMode`] decides
//! how `t` compares with powers of `eps`.

mod exponent;
mod field;
mod format;
mod precision;
pub mod rat;

pub use exponent::{Exponent, GroupMode, Valuation};
pub use field::{Series, StdPart};
pub use format::SeriesJson;
pub use precision::Precision;
pub use rat::Rat;
