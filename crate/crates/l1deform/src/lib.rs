//! Exact weight-graded cohomology of the Lie algebra `L1` of vector fields
//! with trivial 1-jet, and the obstruction calculus of its formal
//! deformations.

pub mod error;
pub mod algebra;
pub mod exact;
pub mod cochain;
pub mod cohomology;
pub mod deformation;
pub mod cli;

pub use error::{Error, Result};
