//! q-calculus: q-integers, the q-derivative `D_q`, the q-exponential,
//! Jackson integrals and the q-analogue of the integration rule.

mod kurokawa;
pub mod zeta;

pub use kurokawa::{kurokawa_check, KurokawaReport, SummationMode};
pub use zeta::{hurwitz_zeta, riemann_zeta};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{eval, taylor_coeffs, Env, Expr};

/// The deformation parameter with its truncation controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    q: f64,
    /// Relative size below which series and product terms are dropped.
    pub tol: f64,
    pub max_jackson_terms: usize,
    pub max_zeta_terms: usize,
}

impl QContext {
    pub fn new(q: f64) -> Result<QContext> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!("q must lie in (0, 1), got {q}")));
        }
        Ok(QContext { q, tol: 1e-16, max_jackson_terms: 2_000_000, max_zeta_terms: 400 })
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// `[x]_q = (1 - q^x) / (1 - q)` for real `x`.
pub fn q_number(x: f64, ctx: &QContext) -> f64 {
    let q = ctx.q;
    // -expm1 keeps precision when q^x is close to 1
    -(x * q.ln()).exp_m1() / (1.0 - q)
}

/// `[j]_q`; negative `j` uses the same formula.
pub fn q_int(j: i64, ctx: &QContext) -> f64 {
    q_number(j as f64, ctx)
}

/// `[j]!_q = [1]_q [2]_q ⋯ [j]_q`.
pub fn q_factorial(j: u64, ctx: &QContext) -> f64 {
    (1..=j).map(|k| q_int(k as i64, ctx)).product()
}

/// `D_q f(x) = (f(qx) - f(x)) / ((q - 1) x)` for `x ≠ 0`.
pub fn dq<F: Fn(f64) -> f64>(f: F, x: f64, ctx: &QContext) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain("D_q at x = 0 needs the series form (see dq_expr)".into()));
    }
    Ok((f(ctx.q * x) - f(x)) / ((ctx.q - 1.0) * x))
}

/// `D_q` of an expression in `var`; at `x = 0` this is the linear Taylor
/// coefficient.
pub fn dq_expr(e: &Expr, var: &str, x: f64, ctx: &QContext) -> Result<f64> {
    if x == 0.0 {
        let c = taylor_coeffs(e, var, Complex64::new(0.0, 0.0), 1)?;
        return Ok(c[1].re);
    }
    dq(|t| eval(e, &Env::new().with(var, t)).map(|v| v.re).unwrap_or(f64::NAN), x, ctx)
}

/// `e_q(x) = Σ_j x^j / [j]!_q`.
pub fn eq_series(x: f64, ctx: &QContext) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut growing = 0;
    for j in 1..100_000 {
        let next = term * x / q_int(j, ctx);
        if next.abs() >= term.abs() && j > 8 {
            growing += 1;
            if growing > 64 {
                return Err(Error::NonConvergent(format!("e_q series diverges at x = {x}")));
            }
        } else {
            growing = 0;
        }
        term = next;
        sum += term;
        if term.abs() <= ctx.tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergent(format!("e_q series did not settle at x = {x}")))
}

/// `Π_{n ≥ start} 1 / (1 - x(1-q) q^n)`.
///
/// `start = 0` is the product equal to [`eq_series`]; `start = 1` drops the
/// first factor.
pub fn eq_product(x: f64, start: u32, ctx: &QContext) -> Result<f64> {
    let q = ctx.q;
    let mut prod = 1.0;
    let mut qn = q.powi(start as i32);
    for _ in 0..100_000 {
        let factor = 1.0 - x * (1.0 - q) * qn;
        if factor == 0.0 {
            return Err(Error::Domain(format!("e_q product has a vanishing factor at x = {x}")));
        }
        prod /= factor;
        if (1.0 - factor).abs() <= ctx.tol {
            return Ok(prod);
        }
        qn *= q;
    }
    Err(Error::NonConvergent("e_q product did not settle".into()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacksonResult {
    pub value: f64,
    /// Bound on the dropped geometric tail.
    pub truncation_error: f64,
    pub terms: usize,
}

/// `∫_0^b f d_q x = (1 - q) b Σ_n q^n f(q^n b)`.
fn jackson_from_zero<F: Fn(f64) -> f64>(f: &F, b: f64, ctx: &QContext) -> Result<JacksonResult> {
    if b == 0.0 {
        return Ok(JacksonResult { value: 0.0, truncation_error: 0.0, terms: 0 });
    }
    let q = ctx.q;
    let mut sum = 0.0;
    let mut qn = 1.0;
    let mut quiet = 0;
    for n in 0..ctx.max_jackson_terms {
        let term = qn * f(qn * b);
        if !term.is_finite() {
            return Err(Error::Domain(format!("integrand is not finite at {}", qn * b)));
        }
        sum += term;
        // remaining terms behave like term · q^k
        let tail = term.abs() * q / (1.0 - q);
        if tail <= ctx.tol * sum.abs().max(1e-300) {
            quiet += 1;
            if quiet >= 3 {
                let scale = (1.0 - q) * b;
                return Ok(JacksonResult { value: scale * sum, truncation_error: (scale * tail).abs(), terms: n + 1 });
            }
        } else {
            quiet = 0;
        }
        qn *= q;
    }
    Err(Error::NonConvergent(format!("Jackson sum did not settle within {} terms", ctx.max_jackson_terms)))
}

/// `∫_a^b f d_q x = ∫_0^b - ∫_0^a`.
pub fn jackson_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, ctx: &QContext) -> Result<JacksonResult> {
    if a < 0.0 || b < 0.0 {
        return Err(Error::InvalidParameter("Jackson limits must be non-negative".into()));
    }
    let upper = jackson_from_zero(&f, b, ctx)?;
    let lower = jackson_from_zero(&f, a, ctx)?;
    Ok(JacksonResult {
        value: upper.value - lower.value,
        truncation_error: upper.truncation_error + lower.truncation_error,
        terms: upper.terms + lower.terms,
    })
}

/// `∫_0^∞ f d_q x = (1 - q) Σ_{n ∈ Z} q^n f(q^n)`.
pub fn jackson_semi_infinite<F: Fn(f64) -> f64>(f: F, ctx: &QContext) -> Result<JacksonResult> {
    let inner = jackson_from_zero(&f, 1.0, ctx)?;
    let q = ctx.q;
    let mut sum = 0.0;
    let mut x = 1.0 / q;
    let mut quiet = 0;
    for n in 0..ctx.max_jackson_terms {
        let term = x * f(x);
        if !term.is_finite() {
            return Err(Error::NonConvergent("Jackson sum overflowed on the outer branch".into()));
        }
        sum += term;
        if term.abs() <= ctx.tol * sum.abs().max(1e-300) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(JacksonResult {
                    value: inner.value + (1.0 - q) * sum,
                    truncation_error: inner.truncation_error + (1.0 - q) * term.abs(),
                    terms: inner.terms + n + 1,
                });
            }
        } else {
            quiet = 0;
        }
        x /= q;
    }
    Err(Error::NonConvergent("outer Jackson sum did not settle".into()))
}

/// `Σ_k c_k (b^{k+1} - a^{k+1}) / [k+1]_q` from the Taylor coefficients of `e`
/// at zero.
pub fn q_ibd_eval(e: &Expr, var: &str, a: f64, b: f64, ctx: &QContext) -> Result<f64> {
    const ORDER: usize = 80;
    let c = taylor_coeffs(e, var, Complex64::new(0.0, 0.0), ORDER)?;
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for (k, ck) in c.iter().enumerate() {
        let p = (k + 1) as i32;
        let term = ck.re * (b.powi(p) - a.powi(p)) / q_int(p as i64, ctx);
        sum += term;
        last = term.abs();
    }
    if last > 1e-14 * sum.abs().max(1.0) {
        return Err(Error::NonConvergent(format!("Taylor series not settled on [{a}, {b}]")));
    }
    Ok(sum)
}
