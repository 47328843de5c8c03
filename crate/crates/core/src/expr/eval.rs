use std::collections::HashMap;

use num_complex::Complex64;

use super::ast::{BinOp, Constant, Expr, Func};
use crate::error::{Error, Result};
use crate::exact::q_to_f64;
use crate::qcalc::zeta::hurwitz_zeta;
use crate::special::{gamma_complex, is_gamma_pole};

/// Value assigned to the Heaviside step at its jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeavisideConvention {
    /// `H(0) = 1`.
    #[default]
    RightContinuous,
    /// `H(0) = 1/2`.
    Midpoint,
}

impl HeavisideConvention {
    pub fn step(self, x: f64) -> f64 {
        if x > 0.0 {
            1.0
        } else if x < 0.0 {
            0.0
        } else {
            match self {
                HeavisideConvention::RightContinuous => 1.0,
                HeavisideConvention::Midpoint => 0.5,
            }
        }
    }
}

/// Variable bindings plus evaluation options.
#[derive(Debug, Clone, Default)]
pub struct Env {
    vars: HashMap<String, Complex64>,
    pub heaviside: HeavisideConvention,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: impl Into<Complex64>) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: impl Into<Complex64>) {
        self.vars.insert(name.to_string(), value.into());
    }

    pub fn get(&self, name: &str) -> Option<Complex64> {
        self.vars.get(name).copied()
    }
}

fn real_arg(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > 1e-14 * z.re.abs().max(1.0) {
        return Err(Error::Domain(format!("{what} needs a real argument, got {z}")));
    }
    Ok(z.re)
}

/// Integer-valued exponents use repeated multiplication so that negative
/// real bases stay on the real axis.
pub(crate) fn complex_pow(base: Complex64, exponent: Complex64) -> Result<Complex64> {
    if exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() < 1e9 {
        let n = exponent.re as i32;
        if base == Complex64::new(0.0, 0.0) && n < 0 {
            return Err(Error::Domain("zero raised to a negative power".into()));
        }
        return Ok(base.powi(n));
    }
    if base.im == 0.0 && base.re > 0.0 && exponent.im == 0.0 {
        return Ok(Complex64::new(base.re.powf(exponent.re), 0.0));
    }
    if base == Complex64::new(0.0, 0.0) {
        if exponent.re > 0.0 {
            return Ok(base);
        }
        return Err(Error::Domain("zero raised to a non-positive power".into()));
    }
    Ok(base.powc(exponent))
}

/// Evaluates `e` at the bindings in `env`.
pub fn eval(e: &Expr, env: &Env) -> Result<Complex64> {
    Ok(match e {
        Expr::Num(x) => Complex64::new(q_to_f64(x), 0.0),
        Expr::Const(Constant::Pi) => Complex64::new(std::f64::consts::PI, 0.0),
        Expr::Const(Constant::E) => Complex64::new(std::f64::consts::E, 0.0),
        Expr::Const(Constant::I) => Complex64::new(0.0, 1.0),
        Expr::Var(v) => env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Expr::Neg(a) => -eval(a, env)?,
        Expr::Binary(op, a, b) => {
            let x = eval(a, env)?;
            let y = eval(b, env)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == Complex64::new(0.0, 0.0) {
                        return Err(Error::Domain("division by zero".into()));
                    }
                    x / y
                }
                BinOp::Pow => complex_pow(x, y)?,
            }
        }
        Expr::Call(f, args) => {
            let x = eval(&args[0], env)?;
            match f {
                Func::Sin => {
                    if x.im == 0.0 {
                        Complex64::new(x.re.sin(), 0.0)
                    } else {
                        x.sin()
                    }
                }
                Func::Cos => {
                    if x.im == 0.0 {
                        Complex64::new(x.re.cos(), 0.0)
                    } else {
                        x.cos()
                    }
                }
                Func::Exp => {
                    if x.im == 0.0 {
                        Complex64::new(x.re.exp(), 0.0)
                    } else {
                        x.exp()
                    }
                }
                Func::Log => {
                    if x == Complex64::new(0.0, 0.0) {
                        return Err(Error::Domain("log(0)".into()));
                    }
                    x.ln()
                }
                Func::Sqrt => x.sqrt(),
                Func::Gamma => {
                    if x.im == 0.0 && is_gamma_pole(x.re) {
                        return Err(Error::Domain(format!("gamma pole at {}", x.re)));
                    }
                    gamma_complex(x)
                }
                Func::Zeta => Complex64::new(hurwitz_zeta(real_arg(x, "zeta")?, 1.0)?, 0.0),
                Func::Hzeta => {
                    let s = real_arg(x, "hzeta")?;
                    let a = real_arg(eval(&args[1], env)?, "hzeta")?;
                    Complex64::new(hurwitz_zeta(s, a)?, 0.0)
                }
                Func::H => Complex64::new(env.heaviside.step(real_arg(x, "H")?), 0.0),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::PI;

    fn at(text: &str, x: f64) -> Complex64 {
        eval(&parse(text).unwrap(), &Env::new().with("x", x)).unwrap()
    }

    #[test]
    fn sinc_at_half_pi() {
        let v = at("sin(x)/x", PI / 2.0);
        assert!((v.re - 2.0 / PI).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn gamma_five() {
        assert_eq!(at("gamma(x)", 5.0).re, 24.0);
    }

    #[test]
    fn heaviside_conventions() {
        assert_eq!(at("H(x)", 0.0).re, 1.0);
        let mid = Env { heaviside: HeavisideConvention::Midpoint, ..Env::new().with("x", 0.0) };
        assert_eq!(eval(&parse("H(x)").unwrap(), &mid).unwrap().re, 0.5);
        assert_eq!(at("H(x)", -1e-300).re, 0.0);
    }

    #[test]
    fn domain_errors() {
        let env = Env::new().with("x", 0.0);
        assert!(matches!(eval(&parse("log(x)").unwrap(), &env), Err(Error::Domain(_))));
        let env = Env::new().with("x", -2.0);
        assert!(matches!(eval(&parse("gamma(x)").unwrap(), &env), Err(Error::Domain(_))));
        assert_eq!(eval(&parse("y + 1").unwrap(), &env), Err(Error::UnboundVariable("y".into())));
    }

    #[test]
    fn principal_log_and_negative_base_powers() {
        let v = eval(&parse("log(-i)").unwrap(), &Env::new()).unwrap();
        assert!((v.im + PI / 2.0).abs() < 1e-15);
        assert_eq!(at("x^3", -2.0), Complex64::new(-8.0, 0.0));
        assert_eq!(at("x^(-2)", -2.0), Complex64::new(0.25, 0.0));
    }

    #[test]
    fn zeta_calls() {
        let v = eval(&parse("zeta(2)").unwrap(), &Env::new()).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-14);
        let v = eval(&parse("hzeta(2, 1/2)").unwrap(), &Env::new()).unwrap();
        assert!((v.re - PI * PI / 2.0).abs() < 1e-13);
    }
}
