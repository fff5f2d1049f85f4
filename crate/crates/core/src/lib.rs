//! Exact wall-and-chamber computations for the GIT quotients
//! `U_{d,n} // SL(d+1)` of pointed rational normal curves.
//!
//! A linearization is a rational point `(gamma, c_1, ..., c_n)` with
//! `(d-1) gamma + sum c_i = d + 1`. Everything here is exact; there is no
//! floating point.

pub mod assignments;
pub mod cli;
pub mod curves;
mod error;
mod fileio;
pub mod limits;
pub mod lincore;
pub mod models;
pub mod partitions;
pub mod sampling;
pub mod trees;
pub mod wallcross;
pub mod walls;

pub use error::{Error, Hyperplane, Result};
pub use limits::Limits;
pub use lincore::{rat, Linearization, MarkedSubset, Rational};
