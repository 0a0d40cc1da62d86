//! Exact computation of poly-Cauchy numbers with level 2.
//!
//! The crate computes the level-2 Stirling triangle and the numbers
//! `C_{2n}^{(k)}` defined by `Lif_{2,k}(arcsinh t)` through several
//! independent routes, and checks the multinomial convolution identities
//! satisfied by `C_{2n} = C_{2n}^{(1)}` with exact rational arithmetic.

pub mod builtin;
pub mod closed_forms;
pub mod conjecture;
pub mod convolution;
pub mod error;
pub mod exact;
pub mod poly;
pub mod polycauchy;
pub mod series;
pub mod series_identities;
pub mod stirling;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rational;
pub use series::Series;
