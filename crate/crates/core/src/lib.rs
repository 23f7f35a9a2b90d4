// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod distributions;
pub mod error;
pub mod model;
pub mod montecarlo;

pub use error::{Error, Result};
