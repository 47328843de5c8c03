//! Closed-form kernels on which `f(-∂)` acts exactly.
//!
//! A [`Kernel`] is a finite sum of terms
//!
//! ```text
//! c · (x + s)^m · (log(x + s) + 2πi·b)^l · e^{w (x + t)} · H(x + h)
//! ```
//!
//! with `c` a [`PiPoly`] and every other field a Gaussian rational, so
//! shifts, derivatives and the common antiderivatives stay exact.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    cmp_cq, cq, cq_int, cq_is_zero, cq_powi, cq_real, cq_to_c64, factorial, gamma_half_integer, q_to_f64, qi, PiPoly,
    SqrtPiMonomial, CQ, Q,
};
use crate::expr::{BinOp, Constant, Expr, Func, HeavisideConvention};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelTerm {
    pub coef: PiPoly,
    pub shift: CQ,
    pub power: i32,
    pub log: bool,
    /// Sheet of the logarithm: `log(x + s) + 2πi · branch`.
    pub branch: i32,
    pub rate: CQ,
    /// `t` in `e^{w (x + t)}`; zero whenever `rate` is zero.
    pub rate_shift: CQ,
    /// `h` in `H(x + h)`.
    pub step: Option<CQ>,
}

impl KernelTerm {
    /// `c · (x + s)^m`.
    pub fn power(coef: PiPoly, shift: CQ, power: i32) -> KernelTerm {
        KernelTerm { coef, shift, power, log: false, branch: 0, rate: cq_int(0), rate_shift: cq_int(0), step: None }
    }

    /// `c · log(x + s)` on the principal sheet.
    pub fn log(coef: PiPoly, shift: CQ) -> KernelTerm {
        KernelTerm { log: true, ..KernelTerm::power(coef, shift, 0) }
    }

    /// `c · e^{w x}`.
    pub fn exp(coef: PiPoly, rate: CQ) -> KernelTerm {
        KernelTerm { rate, ..KernelTerm::power(coef, cq_int(0), 0) }
    }

    /// `c · H(x + h)`.
    pub fn step(coef: PiPoly, h: CQ) -> KernelTerm {
        KernelTerm { step: Some(h), ..KernelTerm::power(coef, cq_int(0), 0) }
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        cmp_cq(&self.shift, &other.shift)
            .then(self.power.cmp(&other.power))
            .then(self.log.cmp(&other.log))
            .then(self.branch.cmp(&other.branch))
            .then_with(|| cmp_cq(&self.rate, &other.rate))
            .then_with(|| cmp_cq(&self.rate_shift, &other.rate_shift))
            .then_with(|| match (&self.step, &other.step) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(a), Some(b)) => cmp_cq(a, b),
            })
    }

    fn normalize(mut self) -> KernelTerm {
        if cq_is_zero(&self.rate) {
            self.rate_shift = cq_int(0);
        }
        if !self.log {
            self.branch = 0;
        }
        // (x + s)^0 carries no information about s unless a log needs it
        if self.power == 0 && !self.log {
            self.shift = cq_int(0);
        }
        self
    }

    fn with_coef(&self, coef: PiPoly) -> KernelTerm {
        KernelTerm { coef, ..self.clone() }
    }

    fn eval(&self, x: Complex64, convention: HeavisideConvention) -> Result<Complex64> {
        let mut v = self.coef.to_c64();
        if let Some(h) = &self.step {
            let arg = x + cq_to_c64(h);
            if arg.im != 0.0 {
                return Err(Error::Domain(format!("Heaviside step at complex argument {arg}")));
            }
            v *= convention.step(arg.re);
        }
        if v == Complex64::new(0.0, 0.0) {
            return Ok(v);
        }
        let base = x + cq_to_c64(&self.shift);
        if self.power != 0 {
            if base == Complex64::new(0.0, 0.0) && self.power < 0 {
                return Err(Error::Domain("kernel pole".into()));
            }
            v *= base.powi(self.power);
        }
        if self.log {
            if base == Complex64::new(0.0, 0.0) {
                return Err(Error::Domain("log(0) in kernel".into()));
            }
            v *= base.ln() + Complex64::new(0.0, 2.0 * std::f64::consts::PI * self.branch as f64);
        }
        if !cq_is_zero(&self.rate) {
            v *= (cq_to_c64(&self.rate) * (x + cq_to_c64(&self.rate_shift))).exp();
        }
        Ok(v)
    }

    /// One derivative, as a list of terms.
    fn derivative(&self) -> Vec<KernelTerm> {
        let mut out = Vec::new();
        if self.power != 0 {
            out.push(KernelTerm {
                power: self.power - 1,
                ..self.with_coef(self.coef.scale(&cq_int(self.power as i64)))
            });
        }
        if self.log {
            out.push(KernelTerm { power: self.power - 1, log: false, ..self.clone() });
        }
        if !cq_is_zero(&self.rate) {
            out.push(self.with_coef(self.coef.scale(&self.rate)));
        }
        out
    }

    fn antiderivative(&self) -> Result<Vec<KernelTerm>> {
        if self.step.is_some() {
            return Err(Error::OutsideFamily("antiderivative of a Heaviside term".into()));
        }
        let m = self.power;
        if cq_is_zero(&self.rate) {
            if !self.log {
                if m == -1 {
                    return Ok(vec![KernelTerm { power: 0, log: true, branch: 0, ..self.clone() }]);
                }
                let inv = cq_real(Q::new(1.into(), (m + 1).into()));
                return Ok(vec![KernelTerm { power: m + 1, ..self.with_coef(self.coef.scale(&inv)) }]);
            }
            if m < 0 {
                return Err(Error::OutsideFamily("negative power times log".into()));
            }
            if self.branch != 0 {
                let sheet = PiPoly::monomial(cq(Q::zero(), qi(2 * self.branch as i64)), 1);
                let mut out = KernelTerm { branch: 0, ..self.clone() }.antiderivative()?;
                out.extend(KernelTerm { log: false, ..self.with_coef(&self.coef * &sheet) }.antiderivative()?);
                return Ok(out);
            }
            // (x+s)^{m+1} log(x+s)/(m+1) - (x+s)^{m+1}/(m+1)^2
            let inv = cq_real(Q::new(1.into(), (m + 1).into()));
            let inv2 = cq_real(-Q::new(1.into(), ((m + 1) * (m + 1)).into()));
            let with_log = KernelTerm { power: m + 1, ..self.with_coef(self.coef.scale(&inv)) };
            let plain = KernelTerm { power: m + 1, log: false, ..self.with_coef(self.coef.scale(&inv2)) };
            return Ok(vec![with_log, plain]);
        }
        if self.log || m < 0 {
            return Err(Error::OutsideFamily("antiderivative of an exponential times a log or negative power".into()));
        }
        // ∫ (x+s)^m e^{w(x+t)} = e^{w(x+t)} Σ_k (-1)^k m!/(m-k)! (x+s)^{m-k} / w^{k+1}
        let mut out = Vec::new();
        let fm = factorial(m as u64);
        for k in 0..=m {
            let falling = Q::new(fm.clone(), factorial((m - k) as u64));
            let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
            let w_pow = cq_powi(&self.rate, -(k + 1)).expect("rate is nonzero");
            let c = cq_real(falling * sign) * w_pow;
            out.push(KernelTerm { power: m - k, ..self.with_coef(self.coef.scale(&c)) });
        }
        Ok(out)
    }
}

/// Canonical sum of [`KernelTerm`]s; the empty sum is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Kernel {
    terms: Vec<KernelTerm>,
}

/// Value of `lim_{x→0⁺}` of a kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum Limit {
    Finite {
        value: Complex64,
        /// Present when the limit is a polynomial in π with Gaussian-rational
        /// coefficients.
        exact: Option<PiPoly>,
    },
    Diverges,
}

impl Limit {
    pub fn value(&self) -> Result<Complex64> {
        match self {
            Limit::Finite { value, .. } => Ok(*value),
            Limit::Diverges => Err(Error::Diverges),
        }
    }

    pub fn exact(&self) -> Option<&PiPoly> {
        match self {
            Limit::Finite { exact, .. } => exact.as_ref(),
            Limit::Diverges => None,
        }
    }
}

impl Kernel {
    pub fn zero() -> Kernel {
        Kernel::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = KernelTerm>) -> Kernel {
        let mut terms: Vec<KernelTerm> = terms.into_iter().map(KernelTerm::normalize).collect();
        terms.sort_by(|a, b| a.key_cmp(b));
        let mut merged: Vec<KernelTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.key_cmp(&t) == Ordering::Equal => {
                    last.coef = last.coef.clone() + t.coef;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coef.is_zero());
        Kernel { terms: merged }
    }

    /// `c · (x + s)^m`.
    pub fn power(coef: PiPoly, shift: CQ, m: i32) -> Kernel {
        Kernel::from_terms([KernelTerm::power(coef, shift, m)])
    }

    /// `1/x`.
    pub fn reciprocal() -> Kernel {
        Kernel::power(PiPoly::one(), cq_int(0), -1)
    }

    /// `log x`.
    pub fn log() -> Kernel {
        Kernel::from_terms([KernelTerm::log(PiPoly::one(), cq_int(0))])
    }

    /// `e^{w x}`.
    pub fn exp(rate: CQ) -> Kernel {
        Kernel::from_terms([KernelTerm::exp(PiPoly::one(), rate)])
    }

    /// `H(x)`.
    pub fn heaviside() -> Kernel {
        Kernel::from_terms([KernelTerm::step(PiPoly::one(), cq_int(0))])
    }

    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_step(&self) -> bool {
        self.terms.iter().any(|t| t.step.is_some())
    }

    pub fn add(&self, other: &Kernel) -> Kernel {
        Kernel::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &CQ) -> Kernel {
        Kernel::from_terms(self.terms.iter().map(|t| t.with_coef(t.coef.scale(c))))
    }

    pub fn scale_pi(&self, c: &PiPoly) -> Kernel {
        Kernel::from_terms(self.terms.iter().map(|t| t.with_coef(&t.coef * c)))
    }

    /// `k(x + a)`.
    pub fn shift(&self, a: &CQ) -> Kernel {
        Kernel::from_terms(self.terms.iter().map(|t| {
            let mut t = t.clone();
            t.shift += a.clone();
            if !cq_is_zero(&t.rate) {
                t.rate_shift += a.clone();
            }
            if let Some(h) = t.step.take() {
                t.step = Some(h + a.clone());
            }
            t
        }))
    }

    /// `d^n k / dx^n`; Heaviside terms have no derivative in the family.
    pub fn derivative_n(&self, n: usize) -> Result<Kernel> {
        if self.has_step() {
            return Err(Error::OutsideFamily("derivative of a Heaviside term".into()));
        }
        let mut k = self.clone();
        for _ in 0..n {
            k = Kernel::from_terms(k.terms.iter().flat_map(|t| t.derivative()));
        }
        Ok(k)
    }

    /// An antiderivative with zero integration constant.
    pub fn antiderivative(&self) -> Result<Kernel> {
        let mut out = Vec::new();
        for t in &self.terms {
            out.extend(t.antiderivative()?);
        }
        Ok(Kernel::from_terms(out))
    }

    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        self.eval_with(x, HeavisideConvention::default())
    }

    pub fn eval_with(&self, x: Complex64, convention: HeavisideConvention) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            acc += t.eval(x, convention)?;
        }
        Ok(acc)
    }

    /// Exact value at a rational point when it is a polynomial in π.
    ///
    /// Only Heaviside and rational-power terms qualify; anything else yields
    /// `None`.
    pub fn eval_exact(&self, x: &Q, convention: HeavisideConvention) -> Option<PiPoly> {
        let mut acc = PiPoly::zero();
        for t in &self.terms {
            if t.log || !cq_is_zero(&t.rate) {
                return None;
            }
            let mut c = t.coef.clone();
            if let Some(h) = &t.step {
                if !h.im.is_zero() {
                    return None;
                }
                let arg = x + &h.re;
                let step = if arg.is_positive() {
                    Q::one()
                } else if arg.is_negative() {
                    Q::zero()
                } else {
                    match convention {
                        HeavisideConvention::RightContinuous => Q::one(),
                        HeavisideConvention::Midpoint => Q::new(1.into(), 2.into()),
                    }
                };
                c = c.scale(&cq_real(step));
            }
            if t.power != 0 {
                let base = cq_real(x.clone()) + t.shift.clone();
                c = c.scale(&cq_powi(&base, t.power)?);
            }
            acc = acc + c;
        }
        Some(acc)
    }

    /// `lim_{x→0⁺} k(x)`, with exact cancellation of divergent parts.
    pub fn limit_at_zero(&self) -> Limit {
        let mut acc = LimitAccumulator::default();
        for t in &self.terms {
            let mut coef = t.coef.clone();
            if let Some(h) = &t.step {
                // right limit of H(x + h)
                if h.im.is_zero() {
                    if h.re.is_negative() {
                        continue;
                    }
                } else {
                    acc.inexact = true;
                    acc.numeric += Complex64::new(f64::NAN, 0.0);
                    continue;
                }
            }
            let z = &t.rate * &t.rate_shift;
            if !cq_is_zero(&t.shift) {
                let base = cq_powi(&t.shift, t.power).expect("nonzero shift");
                coef = coef.scale(&base);
                if t.log {
                    acc.add_log(&coef, &t.shift, t.branch, &z);
                } else {
                    acc.add_plain(0, false, coef, &z);
                }
                continue;
            }
            // x^m log^l(x) e^{w x} e^{w t}, expanded to the constant term
            if t.power > 0 {
                continue;
            }
            let mut wk = cq_int(1);
            for k in 0..=(-t.power) {
                if k > 0 {
                    wk = wk * t.rate.clone() / cq_int(k as i64);
                }
                if cq_is_zero(&wk) {
                    break;
                }
                let order = t.power + k;
                let c = coef.scale(&wk);
                if t.log {
                    acc.add_plain(order, true, c.clone(), &z);
                    if t.branch != 0 {
                        let twopi_i = PiPoly::monomial(cq(Q::zero(), qi(2 * t.branch as i64)), 1);
                        acc.add_plain(order, false, &c * &twopi_i, &z);
                    }
                } else {
                    acc.add_plain(order, false, c, &z);
                }
            }
        }
        acc.finish()
    }

    /// Expression form in `var`; prints in the expression language.
    pub fn to_expr(&self, var: &str) -> Expr {
        let mut acc = Expr::int(0);
        for t in &self.terms {
            let x = Expr::var(var);
            let base = x.clone() + cq_expr(&t.shift);
            let mut term = pi_poly_expr(&t.coef);
            if t.power != 0 {
                term = term * Expr::binary(BinOp::Pow, base.clone(), Expr::int(t.power as i64));
            }
            if t.log {
                let mut l = Expr::call(Func::Log, base.clone());
                if t.branch != 0 {
                    l = l + Expr::int(2 * t.branch as i64) * Expr::Const(Constant::Pi) * Expr::Const(Constant::I);
                }
                term = term * l;
            }
            if !cq_is_zero(&t.rate) {
                let arg = cq_expr(&t.rate) * (x.clone() + cq_expr(&t.rate_shift));
                term = term * Expr::call(Func::Exp, arg);
            }
            if let Some(h) = &t.step {
                term = term * Expr::call(Func::H, x.clone() + cq_expr(h));
            }
            acc = acc + term;
        }
        acc
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr("x"))
    }
}

fn cq_expr(z: &CQ) -> Expr {
    Expr::num(z.re.clone()) + Expr::num(z.im.clone()) * Expr::Const(Constant::I)
}

fn pi_poly_expr(p: &PiPoly) -> Expr {
    let mut acc = Expr::int(0);
    for (k, c) in p.terms() {
        let pi_k = match k {
            0 => Expr::int(1),
            1 => Expr::Const(Constant::Pi),
            k => Expr::binary(BinOp::Pow, Expr::Const(Constant::Pi), Expr::int(k as i64)),
        };
        acc = acc + cq_expr(c) * pi_k;
    }
    acc
}

/// Laurent data of a kernel at `0⁺`, grouped by the exact exponent
/// `w·t` of the constant factor `e^{w t}`.
#[derive(Default)]
struct LimitAccumulator {
    /// `(order, has_log, w·t)` → coefficient of `x^order log^l x · e^{w t}`.
    laurent: Vec<((i32, bool, CQ), PiPoly)>,
    /// `|s|²` → coefficient of `½ log |s|²`.
    log_moduli: Vec<(Q, PiPoly)>,
    numeric: Complex64,
    inexact: bool,
}

impl LimitAccumulator {
    fn add_plain(&mut self, order: i32, log: bool, c: PiPoly, z: &CQ) {
        match self.laurent.iter_mut().find(|((o, l, zz), _)| *o == order && *l == log && zz == z) {
            Some((_, v)) => *v = v.clone() + c,
            None => self.laurent.push(((order, log, z.clone()), c)),
        }
    }

    /// `c · (log s + 2πi b) · e^{z}` with `s ≠ 0`.
    fn add_log(&mut self, c: &PiPoly, s: &CQ, branch: i32, z: &CQ) {
        let (re, im) = (&s.re, &s.im);
        // argument of s when it lies on an axis, as a multiple of π/2
        let quarter_turns = if im.is_zero() {
            Some(if re.is_positive() { 0 } else { 2 })
        } else if re.is_zero() {
            Some(if im.is_positive() { 1 } else { -1 })
        } else {
            None
        };
        let modulus_sq = re * re + im * im;
        if !cq_is_zero(z) {
            let v = c.to_c64() * (cq_to_c64(s).ln() + Complex64::new(0.0, 2.0 * std::f64::consts::PI * branch as f64));
            self.numeric += v * cq_to_c64(z).exp();
            self.inexact = true;
            return;
        }
        let arg_pi = match quarter_turns {
            Some(k) => Q::new(k.into(), 2.into()) + qi(2 * branch as i64),
            None => {
                let arg = cq_to_c64(s).arg() + 2.0 * std::f64::consts::PI * branch as f64;
                self.numeric += c.to_c64() * Complex64::new(0.0, arg);
                self.inexact = true;
                Q::zero()
            }
        };
        // i·arg(s) = i · arg_pi · π
        let imag_part = PiPoly::monomial(cq(Q::zero(), arg_pi), 1);
        self.add_plain(0, false, c * &imag_part, z);
        if !modulus_sq.is_one() {
            match self.log_moduli.iter_mut().find(|(r, _)| *r == modulus_sq) {
                Some((_, v)) => *v = v.clone() + c.clone(),
                None => self.log_moduli.push((modulus_sq, c.clone())),
            }
        }
    }

    fn finish(self) -> Limit {
        let mut exact = PiPoly::zero();
        let mut numeric = self.numeric;
        let mut inexact = self.inexact;
        for ((order, log, z), c) in &self.laurent {
            if c.is_zero() {
                continue;
            }
            if *order < 0 || *log {
                return Limit::Diverges;
            }
            if cq_is_zero(z) {
                exact = exact + c.clone();
            } else {
                numeric += c.to_c64() * cq_to_c64(z).exp();
                inexact = true;
            }
        }
        for (r, c) in &self.log_moduli {
            if c.is_zero() {
                continue;
            }
            numeric += c.to_c64() * 0.5 * q_to_f64(r).ln();
            inexact = true;
        }
        let value = exact.to_c64() + numeric;
        Limit::Finite { value, exact: if inexact { None } else { Some(exact) } }
    }
}

/// Integration domains with a closed-form `∫ e^{-x·y} dy`.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    SemiInfinite,
    Interval(Q, Q),
    Orthant(usize),
    /// All of `R^n`, for integrands depending on `|y|` only.
    Radial(usize),
}

/// A product `Π_j k_j(u_j)` of univariate kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductKernel {
    pub factors: Vec<(String, Kernel)>,
}

impl ProductKernel {
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.factors.len() {
            return Err(Error::InvalidParameter("point dimension mismatch".into()));
        }
        let mut acc = Complex64::new(1.0, 0.0);
        for ((_, k), x) in self.factors.iter().zip(point) {
            acc *= k.eval(*x)?;
        }
        Ok(acc)
    }
}

/// `2 π^{n/2} Γ(n) / Γ(n/2)`, the radial constant for dimension `n`.
pub fn radial_constant(n: usize) -> PiPoly {
    let two_pi = SqrtPiMonomial { coef: qi(2), half_power: n as i32 };
    let gamma_n = SqrtPiMonomial::rational(Q::from_integer(factorial(n as u64 - 1)));
    let gamma_half = gamma_half_integer(n as i64).expect("n ≥ 1");
    two_pi.mul(&gamma_n).div(&gamma_half).and_then(|m| m.to_pi_poly()).expect("π power is integral")
}

/// The kernel `∫_domain e^{-x·y} dy` in the variables `vars`.
pub fn elementary_laplace_kernel(domain: &Domain, vars: &[&str]) -> Result<ProductKernel> {
    let need = match domain {
        Domain::SemiInfinite | Domain::Interval(..) | Domain::Radial(_) => 1,
        Domain::Orthant(n) => *n,
    };
    if vars.len() != need {
        return Err(Error::InvalidParameter(format!("domain needs {need} variable(s), got {}", vars.len())));
    }
    let factors = match domain {
        Domain::SemiInfinite => vec![(vars[0].to_string(), Kernel::reciprocal())],
        Domain::Interval(a, b) => {
            if a >= b {
                return Err(Error::InvalidParameter("interval needs a < b".into()));
            }
            let k = Kernel::from_terms([
                KernelTerm { power: -1, ..KernelTerm::exp(PiPoly::one(), cq_real(-a.clone())) },
                KernelTerm { power: -1, ..KernelTerm::exp(PiPoly::rational(-Q::one()), cq_real(-b.clone())) },
            ]);
            vec![(vars[0].to_string(), k)]
        }
        Domain::Orthant(_) => vars.iter().map(|v| (v.to_string(), Kernel::reciprocal())).collect(),
        Domain::Radial(n) => {
            if *n == 0 {
                return Err(Error::InvalidParameter("radial dimension must be positive".into()));
            }
            vec![(vars[0].to_string(), Kernel::power(radial_constant(*n), cq_int(0), -(*n as i32)))]
        }
    };
    Ok(ProductKernel { factors })
}
