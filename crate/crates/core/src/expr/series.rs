//! Truncated power-series arithmetic used by [`taylor_coeffs`].
//!
//! Each intermediate series carries only the coefficients it knows exactly;
//! dividing by a series with leading zeros shifts both operands and shortens
//! the result, which resolves removable singularities such as `sin(x)/x`.

use num_complex::Complex64;

use super::ast::{BinOp, Expr, Func};
use super::eval::{complex_pow, eval, Env};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
struct Series(Vec<Complex64>);

impl Series {
    fn constant(v: Complex64, len: usize) -> Series {
        let mut c = vec![ZERO; len];
        c[0] = v;
        Series(c)
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn is_constant(&self) -> bool {
        self.0.iter().skip(1).all(|c| *c == ZERO)
    }

    fn valuation(&self) -> Option<usize> {
        let scale = self.0.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return None;
        }
        self.0.iter().position(|c| c.norm() > 1e-13 * scale)
    }

    fn add(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        Series((0..n).map(|k| self.0[k] + o.0[k]).collect())
    }

    fn sub(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        Series((0..n).map(|k| self.0[k] - o.0[k]).collect())
    }

    fn neg(&self) -> Series {
        Series(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        Series((0..n).map(|k| (0..=k).map(|j| self.0[j] * o.0[k - j]).sum()).collect())
    }

    fn div(&self, o: &Series) -> Result<Series> {
        let v = o.valuation().ok_or_else(|| Error::NotAnalytic("division by a vanishing series".into()))?;
        let (num, den) = if v > 0 {
            if let Some(vn) = self.valuation() {
                if vn < v {
                    return Err(Error::NotAnalytic("pole at the expansion point".into()));
                }
            }
            (Series(self.0[v..].to_vec()), Series(o.0[v..].to_vec()))
        } else {
            (self.clone(), o.clone())
        };
        let n = num.len().min(den.len());
        let mut out: Vec<Complex64> = Vec::with_capacity(n);
        for k in 0..n {
            let acc: Complex64 = (1..=k).map(|j| den.0[j] * out[k - j]).sum();
            out.push((num.0[k] - acc) / den.0[0]);
        }
        Ok(Series(out))
    }

    fn exp(&self) -> Series {
        let n = self.len();
        let mut y = vec![ZERO; n];
        y[0] = self.0[0].exp();
        for k in 1..n {
            let acc: Complex64 = (1..=k).map(|j| self.0[j] * y[k - j] * j as f64).sum();
            y[k] = acc / k as f64;
        }
        Series(y)
    }

    fn log(&self) -> Result<Series> {
        let s0 = self.0[0];
        if s0.norm() <= 1e-13 * self.0.iter().map(|c| c.norm()).fold(0.0, f64::max) {
            return Err(Error::NotAnalytic("log branch point".into()));
        }
        let n = self.len();
        let mut y = vec![ZERO; n];
        y[0] = s0.ln();
        for k in 1..n {
            let acc: Complex64 = (1..k).map(|j| y[j] * self.0[k - j] * j as f64).sum();
            y[k] = (self.0[k] * k as f64 - acc) / (s0 * k as f64);
        }
        Ok(Series(y))
    }

    fn sin_cos(&self) -> (Series, Series) {
        let n = self.len();
        let mut s = vec![ZERO; n];
        let mut c = vec![ZERO; n];
        s[0] = self.0[0].sin();
        c[0] = self.0[0].cos();
        for k in 1..n {
            let mut acc_s = ZERO;
            let mut acc_c = ZERO;
            for j in 1..=k {
                let w = self.0[j] * j as f64;
                acc_s += w * c[k - j];
                acc_c -= w * s[k - j];
            }
            s[k] = acc_s / k as f64;
            c[k] = acc_c / k as f64;
        }
        (Series(s), Series(c))
    }

    fn powi(&self, n: i64) -> Result<Series> {
        if n < 0 {
            let one = Series::constant(Complex64::new(1.0, 0.0), self.len());
            return one.div(&self.powi(-n)?);
        }
        let mut acc = Series::constant(Complex64::new(1.0, 0.0), self.len());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    fn powf(&self, alpha: Complex64) -> Result<Series> {
        let s0 = self.0[0];
        if s0.norm() <= 1e-13 * self.0.iter().map(|c| c.norm()).fold(0.0, f64::max) {
            return Err(Error::NotAnalytic("non-integer power at a zero".into()));
        }
        let n = self.len();
        let mut y = vec![ZERO; n];
        y[0] = complex_pow(s0, alpha)?;
        for k in 1..n {
            let acc: Complex64 = (1..=k).map(|j| (alpha * j as f64 - (k - j) as f64) * self.0[j] * y[k - j]).sum();
            y[k] = acc / (s0 * k as f64);
        }
        Ok(Series(y))
    }
}

fn series_of(e: &Expr, var: &str, center: Complex64, len: usize, env: &Env) -> Result<Series> {
    if !e.depends_on(var) {
        return Ok(Series::constant(eval(e, env)?, len));
    }
    Ok(match e {
        Expr::Var(_) => {
            let mut c = vec![ZERO; len];
            c[0] = center;
            if len > 1 {
                c[1] = Complex64::new(1.0, 0.0);
            }
            Series(c)
        }
        Expr::Num(_) | Expr::Const(_) => unreachable!("constants do not depend on the variable"),
        Expr::Neg(a) => series_of(a, var, center, len, env)?.neg(),
        Expr::Binary(op, a, b) => {
            let sa = series_of(a, var, center, len, env)?;
            if *op == BinOp::Pow {
                if !b.depends_on(var) {
                    let exponent = eval(b, env)?;
                    if exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() < 1e6 {
                        return sa.powi(exponent.re as i64);
                    }
                    return sa.powf(exponent);
                }
                let sb = series_of(b, var, center, len, env)?;
                return Ok(sb.mul(&sa.log()?).exp());
            }
            let sb = series_of(b, var, center, len, env)?;
            match op {
                BinOp::Add => sa.add(&sb),
                BinOp::Sub => sa.sub(&sb),
                BinOp::Mul => sa.mul(&sb),
                BinOp::Div => sa.div(&sb)?,
                BinOp::Pow => unreachable!(),
            }
        }
        Expr::Call(f, args) => {
            let s = series_of(&args[0], var, center, len, env)?;
            match f {
                Func::Sin => s.sin_cos().0,
                Func::Cos => s.sin_cos().1,
                Func::Exp => s.exp(),
                Func::Log => s.log()?,
                Func::Sqrt => s.powf(Complex64::new(0.5, 0.0))?,
                Func::H => {
                    let x = s.0[0];
                    if x.im != 0.0 || x.re == 0.0 {
                        return Err(Error::NotAnalytic("Heaviside jump at the expansion point".into()));
                    }
                    Series::constant(Complex64::new(env.heaviside.step(x.re), 0.0), len)
                }
                Func::Gamma | Func::Zeta | Func::Hzeta => {
                    if !s.is_constant() {
                        return Err(Error::NotAnalytic(format!(
                            "series of `{}` with a varying argument is not supported",
                            f.name()
                        )));
                    }
                    Series::constant(eval(e, &env.clone().with(var, center))?, len)
                }
            }
        }
    })
}

/// Taylor coefficients `c_0..=c_order` of `e` around `center` in `var`.
///
/// Other free variables are taken from `env`.
pub fn taylor_coeffs_in(e: &Expr, var: &str, center: Complex64, order: usize, env: &Env) -> Result<Vec<Complex64>> {
    let mut pad = 8;
    loop {
        let s = series_of(e, var, center, order + 1 + pad, env)?;
        if s.len() > order {
            return Ok(s.0[..=order].to_vec());
        }
        if pad > 256 {
            return Err(Error::NotAnalytic("cancellation exhausted the series precision".into()));
        }
        pad *= 2;
    }
}

/// Taylor coefficients of a single-variable expression.
pub fn taylor_coeffs(e: &Expr, var: &str, center: Complex64, order: usize) -> Result<Vec<Complex64>> {
    taylor_coeffs_in(e, var, center, order, &Env::new())
}
