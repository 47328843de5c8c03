//! Integration by differentiation.
//!
//! Integrals of Laplace type are evaluated by letting a pseudo-differential
//! operator `f(-∂)` act on the transform of the bare exponential kernel,
//! and every symbolic result is checked against independent numerics.
//!
//! * [`expr`]: the integrand language.
//! * [`kernels`]: closed-form kernels the operators act on exactly.
//! * [`psido`]: shift sums, truncated series and Euler integrals for
//!   inverse powers.
//! * [`ibd`]: the integration rules and the worked families.
//! * [`qcalc`]: q-integers, `D_q`, Jackson integrals, Hurwitz zeta.
//! * [`oracle`]: quadrature, Monte Carlo, extrapolation, series acceleration.

pub mod error;
pub mod exact;
pub mod expr;
pub mod ibd;
pub mod kernels;
pub mod oracle;
pub mod psido;
pub mod qcalc;
pub mod special;

pub use error::{Error, Result};
