use std::collections::BTreeMap;
use std::path::Path;

use crate::params::parse_assignment;
use crate::CliError;

/// Flat `key=value` settings; blank lines and `#` comments are ignored.
///
/// Recognised keys are `tol`, `seed`, `format`, `filter`,
/// `heaviside-midpoint` and `param.NAME` for case parameters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub format: Option<String>,
    pub filter: Option<String>,
    pub heaviside_midpoint: Option<bool>,
    pub params: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Config, CliError> {
        let mut cfg = Config::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = parse_assignment(line)?;
            let bad = |what: &str| CliError::InvalidParam(format!("config `{line}`: expected {what}"));
            match key.as_str() {
                "tol" => cfg.tol = Some(value.parse().map_err(|_| bad("a number"))?),
                "seed" => cfg.seed = Some(value.parse().map_err(|_| bad("an unsigned integer"))?),
                "format" => cfg.format = Some(value),
                "filter" => cfg.filter = Some(value),
                "heaviside-midpoint" => cfg.heaviside_midpoint = Some(value.parse().map_err(|_| bad("true or false"))?),
                other => match other.strip_prefix("param.") {
                    Some(name) if !name.is_empty() => {
                        cfg.params.insert(name.to_string(), value);
                    }
                    _ => return Err(CliError::InvalidParam(format!("unknown config key `{other}`"))),
                },
            }
        }
        Ok(cfg)
    }
}
