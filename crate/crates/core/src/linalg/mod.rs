//! Exact rational arithmetic and the dense linear-algebra kernel.

mod matrix;
mod rat;

pub use matrix::{span_membership, RatMatrix, Solution};
pub use rat::{ParseRatError, Rat};
