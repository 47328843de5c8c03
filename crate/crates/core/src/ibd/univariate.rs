use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{cq_from_c64, cq_i, cq_int, cq_real, q_from_f64, PiPoly, Q};
use crate::expr::{classify_exp_poly, BinOp, Expr, Func, HeavisideConvention};
use crate::kernels::{elementary_laplace_kernel, Domain, Kernel, Limit};
use crate::psido::{apply_with_power, split_power, ShiftSum};

/// How an operator `f(-∂)` was realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Exact shifts and powers of `∂`.
    ShiftSum,
    /// Term-wise `c·x^n e^{-b x}` with floating coefficients.
    ExpPoly,
}

impl Route {
    fn combine(self, other: Route) -> Route {
        if self == Route::ShiftSum && other == Route::ShiftSum {
            Route::ShiftSum
        } else {
            Route::ExpPoly
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::ShiftSum => "shift-sum",
            Route::ExpPoly => "exp-poly",
        })
    }
}

/// A value from the method, exact when every step was.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodValue {
    pub value: Complex64,
    pub exact: Option<PiPoly>,
    pub route: Route,
}

/// `f(-∂)` applied to `base`, where `f` is a function of `var`.
///
/// `decay` requests the convergence checks for an integral to `+∞` whose
/// integrand is `f(y)·y^{decay_offset}` times a decaying exponential; pass
/// `None` for finite domains.
pub fn method_kernel(f: &Expr, var: &str, base: &Kernel, decay: Option<i32>) -> Result<(Kernel, Route)> {
    if let Ok((s, p)) = split_power(f, var) {
        if let Some(offset) = decay {
            check_decay(&s, p + offset)?;
        }
        return Ok((apply_with_power(&s, p, base)?, Route::ShiftSum));
    }
    let ep = classify_exp_poly(f, var)?;
    let mut acc = Kernel::zero();
    for (c, b, n) in ep.triples() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let k = base.shift(&cq_real(q_from_f64(b))).derivative_n(n as usize)?.scale(&cq_from_c64(c * sign));
        acc = acc.add(&k);
    }
    Ok((acc, Route::ExpPoly))
}

/// Rejects `S(y)·y^p` terms that do not decay at infinity.
fn check_decay(s: &ShiftSum, p: i32) -> Result<()> {
    for (c, shift) in s.terms() {
        if c.is_zero() {
            continue;
        }
        let alpha = -shift.clone();
        if alpha.re > Q::zero() {
            return Err(Error::Diverges);
        }
        if alpha.re.is_zero() {
            let needed = if alpha.im.is_zero() { -2 } else { -1 };
            if p > needed {
                return Err(Error::Diverges);
            }
        }
    }
    Ok(())
}

fn base_kernel(domain: &Domain, var: &str) -> Result<(Kernel, Option<i32>)> {
    let decay = match domain {
        Domain::SemiInfinite => Some(0),
        Domain::Interval(..) => None,
        _ => return Err(Error::InvalidParameter("univariate rule needs a half-line or an interval".into())),
    };
    let mut pk = elementary_laplace_kernel(domain, &[var])?;
    Ok((pk.factors.remove(0).1, decay))
}

fn finish(limit: Limit, route: Route) -> Result<MethodValue> {
    match limit {
        Limit::Finite { value, exact } => Ok(MethodValue { value, exact, route }),
        Limit::Diverges => Err(Error::Diverges),
    }
}

/// `∫_domain f(y) dy` as `lim_{x→0} f(-∂_x) k(x)` with `k` the elementary
/// kernel of the domain.
pub fn laplace_limit_eval(f: &Expr, var: &str, domain: &Domain) -> Result<MethodValue> {
    let (base, decay) = base_kernel(domain, var)?;
    let (k, route) = method_kernel(f, var, &base, decay)?;
    finish(k.limit_at_zero(), route)
}

/// `∫_domain f(y) e^{-x y} dy` at a given `x > 0`.
pub fn laplace_eval_at(f: &Expr, var: &str, domain: &Domain, x: f64) -> Result<Complex64> {
    let (base, decay) = base_kernel(domain, var)?;
    let (k, _) = method_kernel(f, var, &base, decay)?;
    k.eval(Complex64::new(x, 0.0))
}

/// The sinc integral through the operator of `1/y` applied to the kernel
/// `1/(x - i)` of `e^{i y}`: `Im lim (-∂)^{-1} (x - i)^{-1} = -Im lim log(x - i)`.
pub fn sinc_alternative_route() -> Result<MethodValue> {
    let k = Kernel::reciprocal().shift(&-cq_i()).antiderivative()?.scale(&cq_int(-1));
    let m = finish(k.limit_at_zero(), Route::ShiftSum)?;
    let exact = m.exact.map(|p| p.im());
    Ok(MethodValue { value: Complex64::new(m.value.im, 0.0), exact, route: Route::ShiftSum })
}

/// `f(-∂_{u_1}, …, -∂_{u_n}) Π 1/u_i` for a product of single-variable
/// factors, at `point` (`None` entries take the limit `u_i → 0`).
pub fn tensor_eval(f: &Expr, vars: &[&str], point: &[Option<f64>]) -> Result<MethodValue> {
    if vars.len() != point.len() || vars.is_empty() {
        return Err(Error::InvalidParameter("one evaluation point per variable".into()));
    }
    let parts = separate(f, vars)?;
    let mut value = Complex64::new(1.0, 0.0);
    let mut exact = Some(PiPoly::one());
    let mut route = Route::ShiftSum;
    for ((part, var), at) in parts.iter().zip(vars).zip(point) {
        let decay = if at.is_none() { Some(0) } else { None };
        let (k, r) = method_kernel(part, var, &Kernel::reciprocal(), decay)?;
        route = route.combine(r);
        let (v, e) = match at {
            None => match k.limit_at_zero() {
                Limit::Finite { value, exact } => (value, exact),
                Limit::Diverges => return Err(Error::Diverges),
            },
            Some(u) => {
                let e = k.eval_exact(&q_from_f64(*u), HeavisideConvention::default());
                (k.eval(Complex64::new(*u, 0.0))?, e)
            }
        };
        value *= v;
        exact = match (exact, e) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
    }
    Ok(MethodValue { value, exact, route })
}

/// Splits `f` into one factor per variable, refusing coupled expressions.
pub fn separate(f: &Expr, vars: &[&str]) -> Result<Vec<Expr>> {
    let mut parts = vec![Expr::int(1); vars.len()];
    let mut constant = Expr::int(1);
    collect_factors(f, vars, false, &mut parts, &mut constant)?;
    parts[0] = constant * parts[0].clone();
    Ok(parts)
}

fn owner(e: &Expr, vars: &[&str]) -> Result<Option<usize>> {
    let owners: Vec<usize> = (0..vars.len()).filter(|&i| e.depends_on(vars[i])).collect();
    match owners.len() {
        0 => Ok(None),
        1 => Ok(Some(owners[0])),
        _ => Err(Error::NotSeparable(format!(
            "`{e}` couples {}",
            owners.iter().map(|&i| vars[i]).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn place(factor: Expr, at: Option<usize>, invert: bool, parts: &mut [Expr], constant: &mut Expr) {
    let slot = match at {
        Some(i) => &mut parts[i],
        None => constant,
    };
    *slot = if invert { slot.clone() / factor } else { slot.clone() * factor };
}

fn collect_factors(e: &Expr, vars: &[&str], invert: bool, parts: &mut [Expr], constant: &mut Expr) -> Result<()> {
    match e {
        Expr::Binary(BinOp::Mul, a, b) => {
            collect_factors(a, vars, invert, parts, constant)?;
            collect_factors(b, vars, invert, parts, constant)
        }
        Expr::Binary(BinOp::Div, a, b) => {
            collect_factors(a, vars, invert, parts, constant)?;
            collect_factors(b, vars, !invert, parts, constant)
        }
        Expr::Neg(a) => {
            place(Expr::int(-1), None, false, parts, constant);
            collect_factors(a, vars, invert, parts, constant)
        }
        Expr::Call(Func::Exp, args) if args.len() == 1 && owner(e, vars).is_err() => {
            let mut terms = Vec::new();
            additive_terms(&args[0], false, &mut terms);
            let mut groups: Vec<Option<Expr>> = vec![None; vars.len() + 1];
            for t in terms {
                let slot = owner(&t, vars)?.unwrap_or(vars.len());
                groups[slot] = Some(match groups[slot].take() {
                    Some(g) => g + t,
                    None => t,
                });
            }
            for (i, g) in groups.into_iter().enumerate() {
                if let Some(g) = g {
                    let at = if i < vars.len() { Some(i) } else { None };
                    place(Expr::call(Func::Exp, g), at, invert, parts, constant);
                }
            }
            Ok(())
        }
        _ => {
            let at = owner(e, vars)?;
            place(e.clone(), at, invert, parts, constant);
            Ok(())
        }
    }
}

fn additive_terms(e: &Expr, negate: bool, out: &mut Vec<Expr>) {
    match e {
        Expr::Binary(BinOp::Add, a, b) => {
            additive_terms(a, negate, out);
            additive_terms(b, negate, out);
        }
        Expr::Binary(BinOp::Sub, a, b) => {
            additive_terms(a, negate, out);
            additive_terms(b, !negate, out);
        }
        Expr::Neg(a) => additive_terms(a, !negate, out),
        _ => out.push(if negate { -e.clone() } else { e.clone() }),
    }
}
