//! Exact q-expansion toolkit for the genus-zero groups Γ₀(N)⁺.

pub mod elimination;
pub mod error;
pub mod exactnum;
pub mod forms;
pub mod identities;
pub mod jst;
pub mod puiseux;
pub mod qseries;

pub use error::{Error, Result};
pub use exactnum::Rational;
pub use qseries::QSeries;
