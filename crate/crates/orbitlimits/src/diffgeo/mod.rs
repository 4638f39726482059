//! Differential geometry of orbits: second fundamental forms, the projective
//! chart, curvature, the cyclic-shift tables, and the torus optimizer.

mod curvature;
mod cyclic;
mod examples;
mod float;
mod kempf;

pub use curvature::*;
pub use cyclic::*;
pub use examples::*;
pub use float::*;
pub use kempf::*;
