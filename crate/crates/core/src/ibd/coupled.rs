use num_complex::Complex64;

use super::univariate::{method_kernel, MethodValue, Route};
use crate::error::{Error, Result};
use num_traits::One;

use crate::exact::{cq_int, gamma_half_integer, PiPoly, SqrtPiMonomial, Q};
use crate::expr::Expr;
use crate::kernels::{radial_constant, Kernel, Limit};
use crate::oracle::{mc_orthant_exp, McResult, QuadResult};
use crate::psido::inverse_power_apply;
use crate::special::gamma;

/// `∫∫_{x,y>0} (x+y)^{ν-1} e^{-u x - v y} dx dy = Γ(ν)(u^ν - v^ν)/((u-v)(uv)^ν)`.
///
/// `ν = 0` is the logarithmic member `ln(u/v)/(u-v)`; `u = v` gives
/// `Γ(ν+1) u^{-ν-1}`.
pub fn bivariate_xplusy(nu: f64, u: f64, v: f64) -> Result<f64> {
    if !(u > 0.0 && v > 0.0) || !(nu >= 0.0) {
        return Err(Error::InvalidParameter("need ν ≥ 0 and u, v > 0".into()));
    }
    let l = (u / v).ln();
    if nu == 0.0 {
        return Ok(if l == 0.0 { 1.0 / v } else { l / (v * l.exp_m1()) });
    }
    // (u^ν - v^ν)/(u - v) = v^{ν-1} expm1(ν L)/expm1(L), L = ln(u/v)
    let ratio = if l == 0.0 { nu } else { (nu * l).exp_m1() / l.exp_m1() };
    Ok(gamma(nu) * ratio * v.powf(nu - 1.0) / (u * v).powf(nu))
}

/// The same family for `0 ≤ ν < 1` through the Euler integral of the
/// inverse power `(-∂_u - ∂_v)^{ν-1}` acting on `1/(uv)`.
pub fn bivariate_xplusy_euler(nu: f64, u: f64, v: f64, tol: f64) -> Result<QuadResult> {
    if !(0.0..1.0).contains(&nu) {
        return Err(Error::InvalidParameter("Euler route needs 0 ≤ ν < 1".into()));
    }
    inverse_power_apply(1.0 - nu, &[1.0, 1.0], 0.0, &[u, v], |p| 1.0 / (p[0] * p[1]), tol)
}

/// Parameters of `∫_{R_+^n} e^{-b·x} (a0 + a·x)^{-μ} Π x_k^{ν_k - 1} dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerLikeParams {
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub nu: Vec<f64>,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerLikeReport {
    /// Monte Carlo estimate of the `n`-dimensional integral.
    pub lhs: McResult,
    /// `Π Γ(ν_k) / Γ(μ) ∫_0^∞ e^{-a0 t} t^{μ-1} Π (b_k + a_k t)^{-ν_k} dt`.
    pub rhs: QuadResult,
}

impl EulerLikeParams {
    fn validate(&self) -> Result<()> {
        let n = self.a.len();
        if n == 0 || self.b.len() != n || self.nu.len() != n {
            return Err(Error::InvalidParameter("a, b and ν need the same positive length".into()));
        }
        let all_pos = |v: &[f64]| v.iter().all(|x| *x > 0.0);
        if !(self.a0 > 0.0 && self.mu > 0.0 && all_pos(&self.a) && all_pos(&self.b) && all_pos(&self.nu)) {
            return Err(Error::InvalidParameter("parameters must be positive".into()));
        }
        Ok(())
    }
}

/// Both sides of the reduction of an orthant integral with a coupled
/// inverse power to a one-dimensional integral.
pub fn euler_like_reduce(params: &EulerLikeParams, samples: usize, seed: u64) -> Result<EulerLikeReport> {
    params.validate()?;
    let p = params.clone();
    let lhs = mc_orthant_exp(
        move |x: &[f64]| {
            let lin: f64 = p.a0 + p.a.iter().zip(x).map(|(a, x)| a * x).sum::<f64>();
            let weight: f64 = x.iter().zip(&p.nu).map(|(x, nu)| x.powf(nu - 1.0)).product();
            lin.powf(-p.mu) * weight
        },
        &params.b,
        samples,
        seed,
    );
    let nu = params.nu.clone();
    let g = move |point: &[f64]| point.iter().zip(&nu).map(|(b, nu)| b.powf(-nu)).product::<f64>();
    let r = inverse_power_apply(params.mu, &params.a, params.a0, &params.b, g, 1e-12)?;
    let scale: f64 = params.nu.iter().map(|nu| gamma(*nu)).product();
    let rhs = QuadResult { value: r.value * scale, error_estimate: r.error_estimate * scale, ..r };
    Ok(EulerLikeReport { lhs, rhs })
}

fn radial_kernel(f: &Expr, var: &str, n: usize) -> Result<(Kernel, Route)> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let base = Kernel::power(radial_constant(n), cq_int(0), -(n as i32));
    method_kernel(f, var, &base, Some(n as i32 - 1))
}

/// `∫_{R^n} f(|y|) dy` as `C_n lim_{u→0} f(-∂_u) u^{-n}`.
pub fn rotational_eval(f: &Expr, var: &str, n: usize) -> Result<MethodValue> {
    let (k, route) = radial_kernel(f, var, n)?;
    match k.limit_at_zero() {
        Limit::Finite { value, exact } => Ok(MethodValue { value, exact, route }),
        Limit::Diverges => Err(Error::Diverges),
    }
}

/// `∫_{R^n} f(|y|) e^{-u|y|} dy` at a given `u > 0`.
pub fn rotational_eval_at(f: &Expr, var: &str, n: usize, u: f64) -> Result<Complex64> {
    radial_kernel(f, var, n)?.0.eval(Complex64::new(u, 0.0))
}

/// `π^{n/2+1} / Γ(n/2)`, the value of `∫_{R^n} sin|y| / |y|^n dy`.
pub fn rotational_expected(n: usize) -> PiPoly {
    let top = SqrtPiMonomial { coef: Q::one(), half_power: n as i32 + 2 };
    top.div(&gamma_half_integer(n as i64).expect("n ≥ 1")).and_then(|m| m.to_pi_poly()).expect("integral π power")
}
