//! Exact Grothendieck-group computations for categorical `sl_2` and `sl_m`
//! actions.

pub mod error;
pub mod harness;
pub mod kernel_calc;
pub mod matrix;
pub mod nilhecke;
pub mod reflection;
pub mod report;
pub mod scalars;
pub mod strata;
pub mod tensor_model;

pub use error::{Error, ParseError, Result};
