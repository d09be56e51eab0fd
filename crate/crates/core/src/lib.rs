//! Exact computation of logarithmic vector fields and free divisors over the
//! rationals, and freeness of pullbacks of free divisors along polynomial maps.

pub mod construct;
pub mod error;
pub mod groebner;
pub mod lift;
pub mod linalg;
pub mod logvf;
pub mod matrix;
pub mod poly;
pub mod rep;

pub use error::{Error, Result};
