//! Divisor-class algebra, intersection pairings and nef-cone bounds for
//! Quot schemes of torsion quotients on a smooth projective curve.
//!
//! Everything is computed in exact rational arithmetic. The crate is split
//! into four layers:
//!
//! * [`exactmath`]: rationals, vectors, matrices and linear solving;
//! * [`cones`]: polyhedral cones with duality and membership certificates;
//! * [`symprod`]: divisor classes, test curves and nef cones on the
//!   symmetric product `C^(d)`;
//! * [`quot`]: the Néron–Severi space of `Q(n,d)`, its test curves, cone
//!   bounds, exact cases and nefness certificates, plus the JSON report.

pub mod cones;
pub mod error;
pub mod exactmath;
pub mod quot;
pub mod symprod;

pub use error::Error;
pub use exactmath::{rat, Rat, RatMat, RatVec};
