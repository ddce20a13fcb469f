//! Exact and certified arithmetic for algebraic numbers and lacunary power
//! series.

pub mod certify;
pub mod cli;
pub mod error;
pub mod exact;
pub mod field;
pub mod galois;
pub mod heights;
pub mod numerics;
pub mod radical;
pub mod report;
pub mod series;

pub use error::{Error, Result};
