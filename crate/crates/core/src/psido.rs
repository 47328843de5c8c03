//! Pseudo-differential operators `f(-∂)`.
//!
//! Three representations are provided, tried in this order by callers:
//! [`ShiftSum`] for exponential/trigonometric polynomials (exact),
//! [`SeriesOp`] for general analytic symbols (truncated, with a tail
//! estimate), and [`inverse_power_apply`] for `(a0 - a·∂)^{-μ}` through its
//! Euler integral.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, cmp_cq, cq_from_c64, cq_i, cq_int, cq_is_zero, cq_powi, cq_real, format_cq, CQ, Q};
use crate::expr::{taylor_coeffs, BinOp, Constant, Expr, Func};
use crate::kernels::Kernel;
use crate::oracle::{quad_1d_with, QuadOptions, QuadResult};
use crate::special::gamma;

/// `Σ c_j e^{s_j ∂}`, acting as `k ↦ Σ c_j k(x + s_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ShiftSum {
    terms: Vec<(CQ, CQ)>,
}

impl ShiftSum {
    pub fn new(terms: impl IntoIterator<Item = (CQ, CQ)>) -> ShiftSum {
        let mut terms: Vec<(CQ, CQ)> = terms.into_iter().collect();
        terms.sort_by(|a, b| cmp_cq(&a.1, &b.1));
        let mut merged: Vec<(CQ, CQ)> = Vec::with_capacity(terms.len());
        for (c, s) in terms {
            match merged.last_mut() {
                Some(last) if cmp_cq(&last.1, &s) == Ordering::Equal => last.0 = last.0.clone() + c,
                _ => merged.push((c, s)),
            }
        }
        merged.retain(|(c, _)| !cq_is_zero(c));
        ShiftSum { terms: merged }
    }

    pub fn zero() -> ShiftSum {
        ShiftSum::default()
    }

    pub fn identity() -> ShiftSum {
        ShiftSum::shift(cq_int(0))
    }

    /// `e^{s ∂}`.
    pub fn shift(s: CQ) -> ShiftSum {
        ShiftSum::new([(cq_int(1), s)])
    }

    /// The operator `e^{α(-∂)}` of the symbol `e^{α x}`.
    pub fn of_exponential(alpha: &CQ) -> ShiftSum {
        ShiftSum::shift(-alpha.clone())
    }

    /// `(coef, shift)` pairs in canonical order.
    pub fn terms(&self) -> &[(CQ, CQ)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ShiftSum) -> ShiftSum {
        ShiftSum::new(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &CQ) -> ShiftSum {
        ShiftSum::new(self.terms.iter().map(|(k, s)| (k.clone() * c.clone(), s.clone())))
    }

    /// Operator product; shifts add and coefficients multiply.
    pub fn compose(&self, other: &ShiftSum) -> ShiftSum {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, s1) in &self.terms {
            for (c2, s2) in &other.terms {
                out.push((c1.clone() * c2.clone(), s1.clone() + s2.clone()));
            }
        }
        ShiftSum::new(out)
    }

    pub fn pow(&self, m: u32) -> ShiftSum {
        (0..m).fold(ShiftSum::identity(), |acc, _| acc.compose(self))
    }

    /// `Σ_j c_j s_j^k`: the operator's action on `x^k / k!` at zero, times `k!`.
    pub fn moment(&self, k: u32) -> CQ {
        self.terms
            .iter()
            .map(|(c, s)| c.clone() * cq_powi(s, k as i32).unwrap_or_else(|| cq_int(0)))
            .fold(cq_int(0), |a, b| a + b)
    }

    pub fn apply(&self, k: &Kernel) -> Kernel {
        let mut acc = Kernel::zero();
        for (c, s) in &self.terms {
            acc = acc.add(&k.shift(s).scale(c));
        }
        acc
    }

    /// Exact operator of an exponential/trigonometric polynomial in `var`.
    ///
    /// Accepts sums and products of rational constants, `i`, and `exp`,
    /// `sin`, `cos` of arguments affine in `var` with Gaussian-rational
    /// coefficients, plus non-negative integer powers of those.
    pub fn from_expr(e: &Expr, var: &str) -> Result<ShiftSum> {
        let sum = exp_sum(e, var)?;
        let mut out = Vec::new();
        for (c, alpha) in sum {
            out.push((c, -alpha));
        }
        Ok(ShiftSum::new(out))
    }
}

impl fmt::Display for ShiftSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(c, s)| format!("{}*exp({}*D)", format_cq(c), format_cq(s))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ c e^{α x}` with exact `c, α`.
type ExpSum = Vec<(CQ, CQ)>;

fn exp_sum_mul(a: &ExpSum, b: &ExpSum) -> ExpSum {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (c1, a1) in a {
        for (c2, a2) in b {
            out.push((c1.clone() * c2.clone(), a1.clone() + a2.clone()));
        }
    }
    out
}

fn exp_sum_constant(e: &ExpSum) -> Option<CQ> {
    let mut acc = cq_int(0);
    for (c, a) in e {
        if !cq_is_zero(a) && !cq_is_zero(c) {
            return None;
        }
        acc += c.clone();
    }
    Some(acc)
}

/// `(α, β)` when the expression is `α + β·var` exactly.
fn affine(e: &Expr, var: &str) -> Result<(CQ, CQ)> {
    let err = || Error::NotExpPoly(format!("`{e}` is not affine in {var} with exact coefficients"));
    Ok(match e {
        Expr::Num(x) => (cq_real(x.clone()), cq_int(0)),
        Expr::Const(Constant::I) => (cq_i(), cq_int(0)),
        Expr::Var(v) if v == var => (cq_int(0), cq_int(1)),
        Expr::Neg(a) => {
            let (p, q) = affine(a, var)?;
            (-p, -q)
        }
        Expr::Binary(op, a, b) => {
            let (pa, qa) = affine(a, var)?;
            let (pb, qb) = affine(b, var)?;
            match op {
                BinOp::Add => (pa + pb, qa + qb),
                BinOp::Sub => (pa - pb, qa - qb),
                BinOp::Mul if cq_is_zero(&qa) => (pa.clone() * pb, pa * qb),
                BinOp::Mul if cq_is_zero(&qb) => (pa * pb.clone(), qa * pb),
                BinOp::Div if cq_is_zero(&qb) && !cq_is_zero(&pb) => (pa / pb.clone(), qa / pb),
                _ => return Err(err()),
            }
        }
        _ => return Err(err()),
    })
}

fn exp_sum(e: &Expr, var: &str) -> Result<ExpSum> {
    let unsupported = || Error::NotExpPoly(format!("`{e}` is not an exact exponential polynomial"));
    Ok(match e {
        Expr::Num(x) => vec![(cq_real(x.clone()), cq_int(0))],
        Expr::Const(Constant::I) => vec![(cq_i(), cq_int(0))],
        Expr::Const(_) | Expr::Var(_) => return Err(unsupported()),
        Expr::Neg(a) => exp_sum(a, var)?.into_iter().map(|(c, a)| (-c, a)).collect(),
        Expr::Binary(op, a, b) => {
            let sa = exp_sum(a, var)?;
            match op {
                BinOp::Add => sa.into_iter().chain(exp_sum(b, var)?).collect(),
                BinOp::Sub => sa.into_iter().chain(exp_sum(b, var)?.into_iter().map(|(c, a)| (-c, a))).collect(),
                BinOp::Mul => exp_sum_mul(&sa, &exp_sum(b, var)?),
                BinOp::Div => {
                    let d = exp_sum_constant(&exp_sum(b, var)?).ok_or_else(unsupported)?;
                    if cq_is_zero(&d) {
                        return Err(Error::Domain("division by zero".into()));
                    }
                    sa.into_iter().map(|(c, a)| (c / d.clone(), a)).collect()
                }
                BinOp::Pow => {
                    let n = match b.as_ref() {
                        Expr::Num(n) if n.is_integer() && *n >= Q::zero() => n.to_integer(),
                        _ => return Err(unsupported()),
                    };
                    let n: u32 = n.try_into().map_err(|_| unsupported())?;
                    (0..n).fold(vec![(cq_int(1), cq_int(0))], |acc, _| exp_sum_mul(&acc, &sa))
                }
            }
        }
        Expr::Call(f, args) => {
            let (alpha, beta) = affine(&args[0], var)?;
            if !cq_is_zero(&alpha) {
                // e^{α} is not exact unless α = 0
                return Err(unsupported());
            }
            let half = cq_real(Q::new(1.into(), 2.into()));
            let i = cq_i();
            match f {
                Func::Exp => vec![(cq_int(1), beta)],
                // sin z = (e^{iz} - e^{-iz}) / (2i)
                Func::Sin => {
                    let c = half.clone() / i.clone();
                    vec![(c.clone(), i.clone() * beta.clone()), (-c, -(i * beta))]
                }
                Func::Cos => vec![(half.clone(), i.clone() * beta.clone()), (half, -(i * beta))],
                _ => return Err(unsupported()),
            }
        }
    })
}

/// `sin^m(scale·∂)/i` as a shift sum, for odd `m = 2n + 1`:
/// `((-1)^n / 2^m) Σ_k C(m,k) (-1)^k e^{(m - 2k)·scale·∂}`.
pub fn trig_power_expand(m: u32, scale: &CQ) -> Result<ShiftSum> {
    if m.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("trig_power_expand needs an odd power, got {m}")));
    }
    let n = (m - 1) / 2;
    let sign = if n.is_multiple_of(2) { Q::one() } else { -Q::one() };
    let front = sign / Q::from_integer(num_bigint::BigInt::from(2).pow(m));
    let mut out = Vec::new();
    for k in 0..=m {
        let c = Q::from_integer(binomial(m as u64, k as u64)) * if k % 2 == 0 { front.clone() } else { -front.clone() };
        let s = scale.clone() * cq_int(m as i64 - 2 * k as i64);
        out.push((cq_real(c), s));
    }
    Ok(ShiftSum::new(out))
}

/// `f(-∂)` applied to `k` by the operator product in both orders and as the
/// single merged operator `fg`.
pub fn prop1_factorizations(f: &ShiftSum, g: &ShiftSum, k: &Kernel) -> (Kernel, Kernel, Kernel) {
    (f.apply(&g.apply(k)), g.apply(&f.apply(k)), f.compose(g).apply(k))
}

/// Extra Taylor coefficients kept beyond the truncation order for the tail
/// estimate.
const LOOKAHEAD: usize = 8;

/// Truncated Taylor representation `f(t) ≈ Σ_{j ≤ N} c_j t^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOp {
    coeffs: Vec<Complex64>,
    lookahead: Vec<Complex64>,
    /// Whether the operator argument is `-∂` (the default) or `∂`.
    pub negate_argument: bool,
}

/// Result of [`SeriesOp::apply`] at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesApplication {
    pub kernel: Kernel,
    pub value: Complex64,
    pub tail_estimate: f64,
}

impl SeriesOp {
    pub const DEFAULT_ORDER: usize = 40;

    /// From explicit coefficients `c_0..=c_N` plus any known higher ones.
    pub fn new(coeffs: Vec<Complex64>, lookahead: Vec<Complex64>) -> Result<SeriesOp> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("series operator needs at least c_0".into()));
        }
        Ok(SeriesOp { coeffs, lookahead, negate_argument: true })
    }

    /// Taylor coefficients of `e` in `var` at zero, truncated at `order`.
    pub fn from_expr(e: &Expr, var: &str, order: usize) -> Result<SeriesOp> {
        let all = taylor_coeffs(e, var, Complex64::new(0.0, 0.0), order + LOOKAHEAD)?;
        SeriesOp::new(all[..=order].to_vec(), all[order + 1..].to_vec())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `Σ_{j ≤ N} c_j (∓1)^j k^{(j)}` evaluated at `x`, with the size of the
    /// neglected terms estimated from the lookahead coefficients.
    ///
    /// The tail estimate sums the next lookahead terms exactly and bounds the
    /// rest by a geometric series with the ratio of the last two of them.
    pub fn apply(&self, k: &Kernel, x: f64) -> Result<SeriesApplication> {
        if k.has_step() {
            return Err(Error::OutsideFamily("series operator on a Heaviside kernel".into()));
        }
        let sign = |j: usize| if self.negate_argument && j % 2 == 1 { -1.0 } else { 1.0 };
        let at = Complex64::new(x, 0.0);
        let mut kernel = Kernel::zero();
        let mut derivative = k.clone();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                derivative = derivative.derivative_n(1)?;
            }
            if *c != Complex64::new(0.0, 0.0) {
                kernel = kernel.add(&derivative.scale(&cq_from_c64(*c * sign(j))));
            }
        }
        let value = kernel.eval(at)?;
        let mut tail_terms = Vec::with_capacity(self.lookahead.len());
        for c in &self.lookahead {
            derivative = derivative.derivative_n(1)?;
            tail_terms.push(c.norm() * derivative.eval(at)?.norm());
        }
        let mut tail_estimate: f64 = tail_terms.iter().sum();
        if let [.., a, b] = tail_terms[..] {
            if a > 0.0 && b < a {
                let r = b / a;
                tail_estimate += b * r / (1.0 - r);
            } else if b > 0.0 {
                tail_estimate = f64::INFINITY;
            }
        }
        Ok(SeriesApplication { kernel, value, tail_estimate })
    }
}

/// `(a0 - a·∂_b)^{-μ} g` at `b`, through the Euler integral
/// `(1/Γ(μ)) ∫_0^∞ e^{-a0 t} t^{μ-1} g(b + t a) dt`.
pub fn inverse_power_apply<G: Fn(&[f64]) -> f64>(
    mu: f64,
    a: &[f64],
    a0: f64,
    b: &[f64],
    g: G,
    tol: f64,
) -> Result<QuadResult> {
    if !(mu > 0.0) || a0 < 0.0 {
        return Err(Error::InvalidParameter("need μ > 0 and a0 ≥ 0".into()));
    }
    if a.len() != b.len() {
        return Err(Error::InvalidParameter("direction and base point differ in dimension".into()));
    }
    let norm = 1.0 / gamma(mu);
    let integrand = |t: f64| {
        let point: Vec<f64> = b.iter().zip(a).map(|(bk, ak)| bk + t * ak).collect();
        let weight = if a0 == 0.0 { 1.0 } else { (-a0 * t).exp() };
        if weight == 0.0 {
            return 0.0;
        }
        weight * t.powf(mu - 1.0) * g(&point)
    };
    let opts = QuadOptions { abs_tol: tol, rel_tol: 0.0, max_subdivisions: 5000 };
    let r = quad_1d_with(integrand, 0.0, f64::INFINITY, &opts);
    if !r.converged || !r.value.is_finite() {
        return Err(Error::NonConvergent(format!(
            "Euler integral did not converge (estimate {:.3e} ± {:.1e})",
            r.value, r.error_estimate
        )));
    }
    Ok(QuadResult { value: r.value * norm, error_estimate: r.error_estimate * norm, ..r })
}

/// Exact operator for `S(x) / x^j` with `S` an exponential polynomial.
///
/// Returns the shift sum of `S` and the power `j ≥ 0` of the divisor.
pub fn split_inverse_power(e: &Expr, var: &str) -> Result<(ShiftSum, u32)> {
    let (s, power) = split_power(e, var)?;
    if power > 0 {
        return Err(Error::NotExpPoly(format!("positive power of {var} outside the exponential part")));
    }
    Ok((s, (-power) as u32))
}

/// Like [`split_inverse_power`] but for `S(x)·x^p` with any integer `p`.
pub fn split_power(e: &Expr, var: &str) -> Result<(ShiftSum, i32)> {
    let (rest, power) = peel_power(e, var)?;
    Ok((ShiftSum::from_expr(&rest, var)?, power))
}

/// Applies `S(-∂)·(-∂)^p` to `k`; negative `p` goes through
/// [`apply_with_inverse_power`].
pub fn apply_with_power(s: &ShiftSum, p: i32, k: &Kernel) -> Result<Kernel> {
    if p < 0 {
        return apply_with_inverse_power(s, p.unsigned_abs(), k);
    }
    let sign = if p % 2 == 0 { cq_int(1) } else { cq_int(-1) };
    Ok(s.apply(&k.derivative_n(p as usize)?.scale(&sign)))
}

fn peel_power(e: &Expr, var: &str) -> Result<(Expr, i32)> {
    match e {
        Expr::Var(v) if v == var => Ok((Expr::int(1), 1)),
        Expr::Binary(BinOp::Pow, base, exp) if matches!(base.as_ref(), Expr::Var(v) if v == var) => {
            let n = match exp.as_ref() {
                Expr::Num(n) if n.is_integer() => n.to_integer(),
                Expr::Neg(inner) => match inner.as_ref() {
                    Expr::Num(n) if n.is_integer() => -n.to_integer(),
                    _ => return Ok((e.clone(), 0)),
                },
                _ => return Ok((e.clone(), 0)),
            };
            let n: i32 = n.try_into().map_err(|_| Error::InvalidParameter("power too large".into()))?;
            Ok((Expr::int(1), n))
        }
        Expr::Binary(BinOp::Mul, a, b) => {
            let (ra, pa) = peel_power(a, var)?;
            let (rb, pb) = peel_power(b, var)?;
            Ok((ra * rb, pa + pb))
        }
        Expr::Binary(BinOp::Div, a, b) => {
            let (ra, pa) = peel_power(a, var)?;
            let (rb, pb) = peel_power(b, var)?;
            Ok((ra / rb, pa - pb))
        }
        Expr::Neg(a) => {
            let (ra, pa) = peel_power(a, var)?;
            Ok((-ra, pa))
        }
        _ => Ok((e.clone(), 0)),
    }
}

/// `(-∂)^{-j} k`, each step being `g ↦ -∫g` with zero constant (that is
/// `∫_x^∞ g` for decaying powers).
///
/// Also returns the degree of the undetermined polynomial picked up once a
/// step produces a logarithm, or `None` when no logarithm appeared.
pub fn inverse_derivative(k: &Kernel, j: u32) -> Result<(Kernel, Option<u32>)> {
    let mut out = k.clone();
    let mut free_degree = None;
    for step in 0..j {
        let had_log = out.terms().iter().any(|t| t.log);
        out = out.antiderivative()?.scale(&cq_int(-1));
        if free_degree.is_none() && !had_log && out.terms().iter().any(|t| t.log) {
            free_degree = Some(j - 1 - step);
        }
    }
    Ok((out, free_degree))
}

/// Applies `S(-∂)/(-∂)^j` to `k`.
///
/// When the inverse steps leave an undetermined polynomial of degree `d`,
/// `S` must annihilate it (vanishing moments `0..=d`); otherwise the result
/// depends on the constant and the integral diverges.
pub fn apply_with_inverse_power(s: &ShiftSum, j: u32, k: &Kernel) -> Result<Kernel> {
    let (pre, free_degree) = inverse_derivative(k, j)?;
    if let Some(d) = free_degree {
        if (0..=d).any(|m| !cq_is_zero(&s.moment(m))) {
            return Err(Error::Diverges);
        }
    }
    Ok(s.apply(&pre))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{cq, q, qi, PiPoly};
    use crate::expr::parse;
    use crate::kernels::Limit;
    use crate::oracle::quad_2d;

    fn c64(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sine_symbol_to_log_difference() {
        let (s, j) = split_inverse_power(&parse("sin(x)/x").unwrap(), "x").unwrap();
        assert_eq!(j, 1);
        let expected = ShiftSum::new([(cq(Q::zero(), q(1, 2)), cq_i()), (cq(Q::zero(), q(-1, 2)), -cq_i())]);
        // 1/(2i) = -i/2 at shift -i, -1/(2i) = i/2 at shift +i
        assert_eq!(s, ShiftSum::new([(cq(Q::zero(), q(-1, 2)), -cq_i()), (cq(Q::zero(), q(1, 2)), cq_i())]));
        assert_eq!(s, expected);
        let k = apply_with_inverse_power(&s, j, &Kernel::reciprocal()).unwrap();
        assert_eq!(k.limit_at_zero().exact(), Some(&PiPoly::monomial(cq_real(q(1, 2)), 1)));
    }

    #[test]
    fn cosine_over_x_diverges() {
        let (s, j) = split_inverse_power(&parse("cos(x)/x").unwrap(), "x").unwrap();
        assert_eq!(apply_with_inverse_power(&s, j, &Kernel::reciprocal()), Err(Error::Diverges));
    }

    #[test]
    fn trig_powers() {
        let half = cq_real(q(1, 2));
        let one = trig_power_expand(1, &half).unwrap();
        assert_eq!(one, ShiftSum::new([(cq_real(q(1, 2)), half.clone()), (cq_real(q(-1, 2)), -half.clone())]));
        let three = trig_power_expand(3, &half).unwrap();
        let shifts: Vec<CQ> = three.terms().iter().map(|(_, s)| s.clone()).collect();
        assert_eq!(shifts, vec![cq_real(q(-3, 2)), cq_real(q(-1, 2)), cq_real(q(1, 2)), cq_real(q(3, 2))]);
        let weights: Vec<CQ> = three.terms().iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(weights, vec![cq_real(q(1, 8)), cq_real(q(-3, 8)), cq_real(q(3, 8)), cq_real(q(-1, 8))]);
        assert!(trig_power_expand(2, &half).is_err());
    }

    #[test]
    fn heaviside_sum_at_integer_point() {
        let op = trig_power_expand(3, &cq_real(q(1, 2))).unwrap();
        let k = op.apply(&Kernel::heaviside()).scale_pi(&PiPoly::monomial(cq_int(1), 1));
        let v = k.eval_exact(&qi(1), Default::default()).unwrap();
        assert_eq!(v, PiPoly::monomial(cq_real(q(-1, 8)), 1));
    }

    #[test]
    fn zero_operator() {
        assert!(ShiftSum::zero().apply(&Kernel::log()).is_zero());
    }

    #[test]
    fn exponential_series_reproduces_shift() {
        let op = SeriesOp::from_expr(&parse("exp(x)").unwrap(), "x", 40).unwrap();
        let r = op.apply(&Kernel::reciprocal(), 2.0).unwrap();
        assert!((r.value.re - 1.0).abs() <= 1e-12, "{r:?}");
        assert!((r.value.re - 1.0).abs() <= r.tail_estimate * 1.5);
    }

    #[test]
    fn linear_symbol() {
        let op = SeriesOp::new(vec![c64(0.0), c64(1.0)], vec![]).unwrap();
        let r = op.apply(&Kernel::reciprocal(), 3.0).unwrap();
        assert_eq!(r.kernel, Kernel::power(PiPoly::one(), cq_int(0), -2));
    }

    #[test]
    fn sine_series_against_shift_sum() {
        let exact = ShiftSum::from_expr(&parse("sin(x)").unwrap(), "x").unwrap().apply(&Kernel::reciprocal());
        let truth = exact.eval(c64(3.0)).unwrap();
        let coarse =
            SeriesOp::from_expr(&parse("sin(x)").unwrap(), "x", 9).unwrap().apply(&Kernel::reciprocal(), 3.0).unwrap();
        assert!((coarse.value - truth).norm() <= coarse.tail_estimate);
        let fine =
            SeriesOp::from_expr(&parse("sin(x)").unwrap(), "x", 21).unwrap().apply(&Kernel::reciprocal(), 3.0).unwrap();
        assert!((fine.value - truth).norm() <= 1e-9);
    }

    #[test]
    fn euler_integral_examples() {
        let r = inverse_power_apply(1.0, &[1.0, 1.0], 0.0, &[2.0, 1.0], |p| 1.0 / (p[0] * p[1]), 1e-11).unwrap();
        assert!((r.value - std::f64::consts::LN_2).abs() < 1e-10);
        let r = inverse_power_apply(1.0, &[0.0], 1.0, &[0.0], |_| 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = inverse_power_apply(2.0, &[1.0], 1.0, &[1.0], |p| 1.0 / p[0], 1e-11).unwrap();
        let oracle = quad_2d(|t, x| t * (-t - (1.0 + t) * x).exp(), (0.0, f64::INFINITY), (0.0, f64::INFINITY), 1e-9);
        assert!((r.value - oracle.value).abs() < 1e-6);
    }

    #[test]
    fn factorizations_agree() {
        let shift1 = ShiftSum::shift(cq_int(1));
        let (a, b, c) = prop1_factorizations(&shift1, &shift1, &Kernel::reciprocal());
        assert_eq!(a, Kernel::power(PiPoly::one(), cq_int(2), -1));
        assert_eq!(a, b);
        assert_eq!(b, c);
        let sin = ShiftSum::from_expr(&parse("sin(x)").unwrap(), "x").unwrap();
        let cos = ShiftSum::from_expr(&parse("cos(x)").unwrap(), "x").unwrap();
        let (a, b, c) = prop1_factorizations(&sin, &cos, &Kernel::reciprocal());
        assert_eq!(a, b);
        assert_eq!(b, c);
        let x = c64(5.0);
        assert!((a.eval(x).unwrap() - c.eval(x).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn alternative_sinc_route() {
        let k = Kernel::reciprocal().shift(&-cq_i()).antiderivative().unwrap().scale(&cq_int(-1));
        match k.limit_at_zero() {
            Limit::Finite { exact: Some(p), .. } => assert_eq!(p.im(), PiPoly::monomial(cq_real(q(1, 2)), 1)),
            other => panic!("{other:?}"),
        }
    }
}
