//! Exponential polynomials `Σ c_j x^{n_j} e^{-b_j x}` with `b_j > 0`.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::ast::{BinOp, Expr, Func};
use super::eval::{eval, Env};
use crate::error::{Error, Result};
use crate::exact::q_from_f64;

const RATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpPolyTerm {
    pub coef: Complex64,
    /// Decay rate `b > 0`.
    pub rate: f64,
    pub power: u32,
}

/// Canonical exponential polynomial: like terms merged, sorted by `(rate, power)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpPoly {
    terms: Vec<ExpPolyTerm>,
}

fn same_rate(a: f64, b: f64) -> bool {
    (a - b).abs() <= RATE_TOL * a.abs().max(b.abs()).max(1.0)
}

impl ExpPoly {
    /// Builds a canonical exponential polynomial; every rate must be positive.
    pub fn new(terms: impl IntoIterator<Item = ExpPolyTerm>) -> Result<ExpPoly> {
        let mut terms: Vec<ExpPolyTerm> = terms.into_iter().collect();
        if let Some(t) = terms.iter().find(|t| !(t.rate > 0.0) && t.coef != Complex64::new(0.0, 0.0)) {
            return Err(Error::NotExpPoly(format!("decay rate {} is not positive", t.rate)));
        }
        terms.sort_by(|a, b| a.rate.partial_cmp(&b.rate).unwrap_or(Ordering::Equal).then(a.power.cmp(&b.power)));
        let mut merged: Vec<ExpPolyTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.iter_mut().find(|m| m.power == t.power && same_rate(m.rate, t.rate)) {
                Some(m) => m.coef += t.coef,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coef != Complex64::new(0.0, 0.0));
        merged.sort_by(|a, b| a.rate.partial_cmp(&b.rate).unwrap_or(Ordering::Equal).then(a.power.cmp(&b.power)));
        Ok(ExpPoly { terms: merged })
    }

    pub fn terms(&self) -> &[ExpPolyTerm] {
        &self.terms
    }

    /// `(coef, rate, power)` triples.
    pub fn triples(&self) -> Vec<(Complex64, f64, u32)> {
        self.terms.iter().map(|t| (t.coef, t.rate, t.power)).collect()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|t| t.coef * x.powi(t.power as i32) * (-t.rate * x).exp()).sum()
    }

    pub fn derivative(&self) -> ExpPoly {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.power > 0 {
                out.push(ExpPolyTerm { coef: t.coef * t.power as f64, rate: t.rate, power: t.power - 1 });
            }
            out.push(ExpPolyTerm { coef: -t.coef * t.rate, rate: t.rate, power: t.power });
        }
        ExpPoly::new(out).expect("rates stay positive")
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                out.push(ExpPolyTerm { coef: a.coef * b.coef, rate: a.rate + b.rate, power: a.power + b.power });
            }
        }
        ExpPoly::new(out).expect("rates stay positive")
    }

    pub fn scale(&self, c: Complex64) -> ExpPoly {
        ExpPoly::new(self.terms.iter().map(|t| ExpPolyTerm { coef: t.coef * c, ..*t })).expect("rates unchanged")
    }

    /// Term-wise `∫_0^∞ = Σ c n! / b^{n+1}`.
    pub fn integral_to_infinity(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let fact: f64 = (1..=t.power).map(f64::from).product();
                t.coef * fact / t.rate.powi(t.power as i32 + 1)
            })
            .sum()
    }

    /// Expression form in `var`.
    pub fn to_expr(&self, var: &str) -> Expr {
        let mut acc = Expr::int(0);
        for t in &self.terms {
            let coef = if t.coef.im == 0.0 {
                Expr::num(q_from_f64(t.coef.re))
            } else {
                Expr::num(q_from_f64(t.coef.re))
                    + Expr::num(q_from_f64(t.coef.im)) * Expr::Const(super::ast::Constant::I)
            };
            let power = match t.power {
                0 => Expr::int(1),
                1 => Expr::var(var),
                n => Expr::binary(BinOp::Pow, Expr::var(var), Expr::int(n as i64)),
            };
            let exp = Expr::call(Func::Exp, -(Expr::num(q_from_f64(t.rate)) * Expr::var(var)));
            acc = acc + coef * power * exp;
        }
        acc
    }
}

/// Intermediate form allowing any complex rate `w` in `x^n e^{w x}`.
#[derive(Debug, Clone)]
struct Raw(Vec<(Complex64, Complex64, u32)>);

impl Raw {
    fn constant(c: Complex64) -> Raw {
        Raw(vec![(c, Complex64::new(0.0, 0.0), 0)])
    }

    fn add(mut self, o: Raw) -> Raw {
        self.0.extend(o.0);
        self
    }

    fn scale(self, c: Complex64) -> Raw {
        Raw(self.0.into_iter().map(|(k, w, n)| (k * c, w, n)).collect())
    }

    fn mul(&self, o: &Raw) -> Raw {
        let mut out = Vec::with_capacity(self.0.len() * o.0.len());
        for (c1, w1, n1) in &self.0 {
            for (c2, w2, n2) in &o.0 {
                out.push((c1 * c2, w1 + w2, n1 + n2));
            }
        }
        Raw(out)
    }

    fn as_constant(&self) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, w, n) in &self.0 {
            if *n != 0 || *w != Complex64::new(0.0, 0.0) {
                if *c != Complex64::new(0.0, 0.0) {
                    return None;
                }
                continue;
            }
            acc += c;
        }
        Some(acc)
    }

    /// `α + β x` when the form is affine in `x`.
    fn as_affine(&self) -> Option<(Complex64, Complex64)> {
        let mut alpha = Complex64::new(0.0, 0.0);
        let mut beta = Complex64::new(0.0, 0.0);
        for (c, w, n) in &self.0 {
            if *c == Complex64::new(0.0, 0.0) {
                continue;
            }
            if *w != Complex64::new(0.0, 0.0) {
                return None;
            }
            match n {
                0 => alpha += c,
                1 => beta += c,
                _ => return None,
            }
        }
        Some((alpha, beta))
    }
}

fn raw_of(e: &Expr, var: &str) -> Result<Raw> {
    if !e.depends_on(var) {
        let c = eval(e, &Env::new()).map_err(|err| Error::NotExpPoly(format!("non-numeric constant `{e}`: {err}")))?;
        return Ok(Raw::constant(c));
    }
    match e {
        Expr::Var(_) => Ok(Raw(vec![(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 1)])),
        Expr::Neg(a) => Ok(raw_of(a, var)?.scale(Complex64::new(-1.0, 0.0))),
        Expr::Binary(op, a, b) => match op {
            BinOp::Add => Ok(raw_of(a, var)?.add(raw_of(b, var)?)),
            BinOp::Sub => Ok(raw_of(a, var)?.add(raw_of(b, var)?.scale(Complex64::new(-1.0, 0.0)))),
            BinOp::Mul => Ok(raw_of(a, var)?.mul(&raw_of(b, var)?)),
            BinOp::Div => {
                let den =
                    raw_of(b, var)?.as_constant().ok_or_else(|| Error::NotExpPoly(format!("division by `{b}`")))?;
                if den == Complex64::new(0.0, 0.0) {
                    return Err(Error::NotExpPoly("division by zero".into()));
                }
                Ok(raw_of(a, var)?.scale(1.0 / den))
            }
            BinOp::Pow => {
                if !b.depends_on(var) {
                    let n = eval(b, &Env::new()).map_err(|err| Error::NotExpPoly(err.to_string()))?;
                    if n.im != 0.0 || n.re < 0.0 || n.re.fract() != 0.0 || n.re > 64.0 {
                        return Err(Error::NotExpPoly(format!("exponent `{b}` is not a small non-negative integer")));
                    }
                    let base = raw_of(a, var)?;
                    let mut acc = Raw::constant(Complex64::new(1.0, 0.0));
                    for _ in 0..n.re as u32 {
                        acc = acc.mul(&base);
                    }
                    return Ok(acc);
                }
                if !a.depends_on(var) {
                    // c^v = exp(v log c)
                    let c = eval(a, &Env::new()).map_err(|err| Error::NotExpPoly(err.to_string()))?;
                    if c == Complex64::new(0.0, 0.0) {
                        return Err(Error::NotExpPoly("zero base with a varying exponent".into()));
                    }
                    return exp_of(&raw_of(b, var)?.scale(c.ln()));
                }
                Err(Error::NotExpPoly(format!("`{e}` has a varying base and exponent")))
            }
        },
        Expr::Call(Func::Exp, args) => exp_of(&raw_of(&args[0], var)?),
        Expr::Call(f, _) => Err(Error::NotExpPoly(format!("`{}` of the variable", f.name()))),
        Expr::Num(_) | Expr::Const(_) => unreachable!(),
    }
}

fn exp_of(arg: &Raw) -> Result<Raw> {
    let (alpha, beta) =
        arg.as_affine().ok_or_else(|| Error::NotExpPoly("exponent is not affine in the variable".into()))?;
    Ok(Raw(vec![(alpha.exp(), beta, 0)]))
}

/// Decomposes `e` as `Σ c_j x^{n_j} e^{-b_j x}` with real `b_j > 0`.
pub fn classify_exp_poly(e: &Expr, var: &str) -> Result<ExpPoly> {
    if let Some(other) = e.free_vars().into_iter().find(|v| v != var) {
        return Err(Error::NotExpPoly(format!("free parameter `{other}`")));
    }
    let raw = raw_of(e, var)?;
    let mut terms = Vec::new();
    for (c, w, n) in raw.0 {
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        if w.im != 0.0 {
            return Err(Error::NotExpPoly(format!("oscillating factor e^({w} x)")));
        }
        terms.push(ExpPolyTerm { coef: c, rate: -w.re, power: n });
    }
    ExpPoly::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn classify(text: &str) -> Result<ExpPoly> {
        classify_exp_poly(&parse(text).unwrap(), "x")
    }

    #[test]
    fn single_term() {
        let p = classify("x^2*exp(-3*x)").unwrap();
        assert_eq!(p.triples(), vec![(Complex64::new(1.0, 0.0), 3.0, 2)]);
    }

    #[test]
    fn expansion_merges_rates() {
        let p = classify("(x+1)*exp(-x)*exp(-2*x)").unwrap();
        assert_eq!(p.triples(), vec![(Complex64::new(1.0, 0.0), 3.0, 0), (Complex64::new(1.0, 0.0), 3.0, 1)]);
    }

    #[test]
    fn growth_is_rejected() {
        assert!(matches!(classify("exp(x)"), Err(Error::NotExpPoly(_))));
        assert!(matches!(classify("x^2"), Err(Error::NotExpPoly(_))));
        assert!(matches!(classify("sin(x)*exp(-x)"), Err(Error::NotExpPoly(_))));
        assert!(matches!(classify("exp(-a*x)"), Err(Error::NotExpPoly(_))));
        assert!(matches!(classify("exp(-x)/x"), Err(Error::NotExpPoly(_))));
    }

    #[test]
    fn cancelling_terms_vanish() {
        let p = classify("x*exp(-x) - exp(-x)*x + exp(-2*x)/2").unwrap();
        assert_eq!(p.triples(), vec![(Complex64::new(0.5, 0.0), 2.0, 0)]);
    }

    #[test]
    fn integral_and_round_trip() {
        let p = classify("x^2*exp(-2*x)").unwrap();
        assert!((p.integral_to_infinity().re - 0.25).abs() < 1e-15);
        let again = classify_exp_poly(&p.to_expr("x"), "x").unwrap();
        assert_eq!(again, p);
    }
}
