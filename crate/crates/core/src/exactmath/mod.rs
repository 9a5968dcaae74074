//! Exact rational scalars, vectors and small dense matrices.
//!
//! Nothing in this crate uses floating point; decimal strings are produced
//! only by [`Rat::to_decimal`] for display.

mod linalg;
mod rat;

pub use linalg::{RatMat, RatVec};
pub use rat::{rat, Rat};
