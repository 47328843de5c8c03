//! Integrand expressions: parsing, printing, evaluation, symbolic
//! differentiation, Taylor expansion, and exponential-polynomial
//! classification.

mod ast;
mod diff;
mod eval;
mod exppoly;
mod parse;
mod series;

pub use ast::{BinOp, Constant, Expr, Func};
pub use diff::diff;
pub use eval::{eval, Env, HeavisideConvention};
pub use exppoly::{classify_exp_poly, ExpPoly, ExpPolyTerm};
pub use parse::parse;
pub use series::{taylor_coeffs, taylor_coeffs_in};
