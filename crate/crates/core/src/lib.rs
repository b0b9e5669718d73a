//! Convex polytopes, zonotopes and their projections, with Monte Carlo
//! quermassintegrals, classical positions and a catalog of checkable
//! inequalities relating the surface area of a body to that of its shadows.

pub mod error;
pub mod harness;
mod linalg;
pub mod polytope;
pub mod positions;
pub mod quermass;
pub mod sampling;
pub mod zonotope;

pub use error::{GeomError, Result};
