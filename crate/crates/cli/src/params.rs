use std::collections::BTreeMap;

use ibd_core::exact::Q;
use ibd_core::expr::{parse, Expr};

use crate::CliError;

/// Case parameters as given on the command line, after defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

fn invalid(name: &str, raw: &str, what: &str) -> CliError {
    CliError::InvalidParam(format!("{name}={raw}: expected {what}"))
}

/// Splits `key=value`.
pub fn parse_assignment(text: &str) -> Result<(String, String), CliError> {
    match text.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(CliError::InvalidParam(format!("`{text}` is not of the form key=value"))),
    }
}

impl Params {
    pub fn new(values: BTreeMap<String, String>) -> Self {
        Params { values }
    }

    pub fn as_map(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    fn raw(&self, name: &str) -> Result<&str, CliError> {
        self.values.get(name).map(String::as_str).ok_or_else(|| CliError::InvalidParam(format!("missing `{name}`")))
    }

    pub fn f64(&self, name: &str) -> Result<f64, CliError> {
        let raw = self.raw(name)?;
        raw.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| invalid(name, raw, "a finite number"))
    }

    pub fn positive(&self, name: &str) -> Result<f64, CliError> {
        let x = self.f64(name)?;
        if x > 0.0 {
            Ok(x)
        } else {
            Err(invalid(name, self.raw(name)?, "a positive number"))
        }
    }

    pub fn u32(&self, name: &str) -> Result<u32, CliError> {
        let raw = self.raw(name)?;
        raw.parse().map_err(|_| invalid(name, raw, "a non-negative integer"))
    }

    pub fn usize(&self, name: &str) -> Result<usize, CliError> {
        let raw = self.raw(name)?;
        raw.parse().map_err(|_| invalid(name, raw, "a non-negative integer"))
    }

    /// A rational written as `a`, `a/b` or a terminating decimal.
    pub fn rational(&self, name: &str) -> Result<Q, CliError> {
        let raw = self.raw(name)?;
        let bad = || invalid(name, raw, "a rational such as 3, -1/2 or 0.25");
        if let Some((n, d)) = raw.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Q::new(n.into(), d.into()));
        }
        match parse(raw) {
            Ok(Expr::Num(x)) => Ok(x),
            Ok(Expr::Neg(inner)) => match *inner {
                Expr::Num(x) => Ok(-x),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }

    pub fn list(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let raw = self.raw(name)?;
        let v: Option<Vec<f64>> =
            raw.split(',').map(|s| s.trim().parse::<f64>().ok().filter(|x| x.is_finite())).collect();
        match v {
            Some(v) if !v.is_empty() => Ok(v),
            _ => Err(invalid(name, raw, "a comma-separated list of numbers")),
        }
    }

    pub fn expr(&self, name: &str) -> Result<Expr, CliError> {
        let raw = self.raw(name)?;
        parse(raw).map_err(|e| CliError::InvalidParam(format!("{name}={raw}: {e}")))
    }
}
