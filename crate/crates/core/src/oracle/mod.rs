//! Numerical ground truth used to check every symbolic result.

mod accel;
mod mc;
mod osc;
mod quad;
mod rng;

pub use accel::{euler_transform, richardson_limit, EulerSum, Extrapolated};
pub use mc::{mc_orthant_exp, mc_simplex, McResult};
pub use osc::quad_oscillatory;
pub use quad::{quad_1d, quad_1d_with, quad_2d, QuadOptions, QuadResult};
pub use rng::Rng;
