//! Exact arithmetic for central factorial numbers of both kinds, their
//! r-central extensions, central Bell polynomials, and Stirling-type numbers,
//! with an identity suite that cross-checks independent computation paths.

pub mod bell;
pub mod central_numbers;
pub mod error;
pub mod first_kind;
pub mod identity_suite;
pub mod output;
pub mod polynomial;
pub mod power_series;
pub mod rational;
pub mod table;

pub use error::{Error, Result};
pub use polynomial::Polynomial;
pub use power_series::Series;
pub use rational::Rational;
pub use table::{Family, Path, TriangleTable};
