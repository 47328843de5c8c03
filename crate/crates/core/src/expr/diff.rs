use super::ast::{BinOp, Expr, Func};
use crate::error::{Error, Result};

/// Symbolic derivative of `e` with respect to `var`.
///
/// `H`, `zeta`, `hzeta` and `gamma` are only accepted when their arguments do
/// not depend on `var`.
pub fn diff(e: &Expr, var: &str) -> Result<Expr> {
    if !e.depends_on(var) {
        return Ok(Expr::int(0));
    }
    Ok(match e {
        Expr::Var(_) => Expr::int(1),
        Expr::Num(_) | Expr::Const(_) => Expr::int(0),
        Expr::Neg(a) => -diff(a, var)?,
        Expr::Binary(op, a, b) => {
            let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
            match op {
                BinOp::Add => diff(&a, var)? + diff(&b, var)?,
                BinOp::Sub => diff(&a, var)? - diff(&b, var)?,
                BinOp::Mul => diff(&a, var)? * b.clone() + a.clone() * diff(&b, var)?,
                BinOp::Div => {
                    let num = diff(&a, var)? * b.clone() - a.clone() * diff(&b, var)?;
                    num / Expr::binary(BinOp::Pow, b, Expr::int(2))
                }
                BinOp::Pow => {
                    if !b.depends_on(var) {
                        // n u^(n-1) u'
                        let lowered = Expr::binary(BinOp::Pow, a.clone(), b.clone() - Expr::int(1));
                        b * lowered * diff(&a, var)?
                    } else {
                        // u^v (v' log u + v u'/u)
                        let log_a = Expr::call(Func::Log, a.clone());
                        let inner = diff(&b, var)? * log_a + b.clone() * diff(&a, var)? / a.clone();
                        Expr::binary(BinOp::Pow, a, b) * inner
                    }
                }
            }
        }
        Expr::Call(f, args) => {
            let u = args[0].clone();
            let du = diff(&u, var)?;
            let outer = match f {
                Func::Sin => Expr::call(Func::Cos, u),
                Func::Cos => -Expr::call(Func::Sin, u),
                Func::Exp => e.clone(),
                Func::Log => Expr::int(1) / u,
                Func::Sqrt => Expr::int(1) / (Expr::int(2) * e.clone()),
                Func::Gamma | Func::Zeta | Func::Hzeta | Func::H => {
                    return Err(Error::NotDifferentiable(f.name().to_string()))
                }
            };
            outer * du
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval, parse, Env};

    fn d_at(text: &str, x: f64) -> f64 {
        let d = diff(&parse(text).unwrap(), "x").unwrap();
        eval(&d, &Env::new().with("x", x)).unwrap().re
    }

    fn central(text: &str, x: f64) -> f64 {
        let e = parse(text).unwrap();
        let h = 1e-5;
        let f = |t: f64| eval(&e, &Env::new().with("x", t)).unwrap().re;
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn sinc_derivative_matches_finite_difference() {
        let exact = 1f64.cos() - 1f64.sin();
        assert!((d_at("sin(x)/x", 1.0) - exact).abs() < 1e-15);
        assert!((d_at("sin(x)/x", 1.0) - central("sin(x)/x", 1.0)).abs() < 1e-6);
    }

    #[test]
    fn exponential_with_parameter() {
        let d = diff(&parse("exp(a*x)").unwrap(), "x").unwrap();
        let env = Env::new().with("x", 0.3).with("a", 1.7);
        let v = eval(&d, &env).unwrap().re;
        assert!((v - 1.7 * (1.7f64 * 0.3).exp()).abs() < 1e-13);
    }

    #[test]
    fn cube() {
        assert_eq!(d_at("x^3", 2.0), 12.0);
    }

    #[test]
    fn mixed_rules() {
        for text in ["x^x", "sqrt(1+x^2)", "log(x)*cos(x)", "exp(-x)*x^2/(1+x)"] {
            let a = d_at(text, 1.3);
            let b = central(text, 1.3);
            assert!((a - b).abs() < 1e-6 * (1.0 + a.abs()), "{text}: {a} vs {b}");
        }
    }

    #[test]
    fn heaviside_is_rejected() {
        assert_eq!(diff(&parse("H(x)").unwrap(), "x"), Err(Error::NotDifferentiable("H".into())));
        // constant with respect to x
        assert!(diff(&parse("H(y)*x").unwrap(), "x").is_ok());
    }
}
