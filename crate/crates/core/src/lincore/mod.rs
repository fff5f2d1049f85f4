//! Exact rationals, marked subsets, linearizations on the cross-section and
//! the weight functions `phi` and `sigma`.

mod linearization;
mod rational;
mod subset;
mod weights;

pub use linearization::{Linearization, LinearizationRecord};
pub use rational::{ceil_int, floor_int, format_rational, parse_rational, rat, Rational};
pub use subset::MarkedSubset;
pub use weights::{is_generic, phi, sigma, wall_hits, PhiClass, WeightTable};
pub(crate) use weights::require_generic;
