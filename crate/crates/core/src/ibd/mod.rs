//! Integration by differentiation.
//!
//! An integral `∫ f(y) e^{-x y} dy` over a domain is `f(-∂_x)` applied to the
//! domain's elementary kernel; the plain integral is the limit `x → 0`.
//! The univariate rules live in [`laplace_limit_eval`] and its relatives;
//! the remaining functions cover products, radial integrands, simplex
//! indicators and a few coupled two-variable forms.

mod coupled;
mod ramanujan;
mod simplex;
mod univariate;

pub use coupled::{
    bivariate_xplusy, bivariate_xplusy_euler, euler_like_reduce, rotational_eval, rotational_eval_at,
    rotational_expected, EulerLikeParams, EulerLikeReport,
};
pub use ramanujan::{
    ramanujan_gamma, ramanujan_heaviside, ramanujan_heaviside_both, ramanujan_oracle, ramanujan_oracle_rational,
    JumpValues, RamanujanParams,
};
pub use simplex::{
    simplex_laplace, simplex_laplace_closed_form, simplex_laplace_via_heaviside, simplex_weighted_reduce, SimplexSpec,
    WeightedReport,
};
pub use univariate::{
    laplace_eval_at, laplace_limit_eval, method_kernel, separate, sinc_alternative_route, tensor_eval, MethodValue,
    Route,
};
