//! Uniform measure on the sphere, Haar measure on the Grassmannian, Monte
//! Carlo estimates, and multi-start minimization over both manifolds.

mod estimate;
mod grassmannian;
mod minimize;
mod rng;
mod sphere;

pub use estimate::{mc_estimate, Estimate};
pub use grassmannian::{sample_grassmannian, SubspaceBasis};
pub use minimize::{minimize_on_grassmannian, minimize_on_sphere, refine_on_sphere, MinimizeOptions};
pub use rng::{stable_hash, RngSeed};
pub use sphere::{sample_sphere, Direction};

pub(crate) use sphere::gaussian_direction;
