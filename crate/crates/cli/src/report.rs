use std::str::FromStr;

use num_complex::Complex64;

use crate::registry::CaseRecord;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Md,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        <Format as clap::ValueEnum>::from_str(s, true)
            .map_err(|_| CliError::InvalidParam(format!("unknown format `{s}` (md, csv, json)")))
    }
}

const COLUMNS: [&str; 10] =
    ["case_id", "params", "method_value", "oracle_value", "abs_err", "rel_err", "tol", "status", "note", "seconds"];

fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        number(z.re)
    } else {
        format!("{:.16e}{:+.16e}i", z.re, z.im)
    }
}

fn params(r: &CaseRecord) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn render(records: &[CaseRecord], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => serde_json::to_string_pretty(records).map(|s| s + "\n").map_err(|e| CliError::Io(e.into())),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.into());
            w.write_record(COLUMNS).map_err(io)?;
            for r in records {
                w.write_record([
                    r.case_id.clone(),
                    params(r),
                    complex(r.method_value),
                    complex(r.oracle_value),
                    number(r.abs_err),
                    number(r.rel_err),
                    number(r.tol),
                    r.status.to_string(),
                    r.note.clone(),
                    format!("{:.6}", r.seconds),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Md => {
            let mut out =
                String::from("| case | params | method | oracle | abs err | rel err | tol | status | note |\n");
            out.push_str("|---|---|---|---|---|---|---|---|---|\n");
            for r in records {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {:.3e} | {:.3e} | {:.1e} | {} | {} |\n",
                    r.case_id,
                    params(r),
                    complex(r.method_value),
                    complex(r.oracle_value),
                    r.abs_err,
                    r.rel_err,
                    r.tol,
                    r.status,
                    r.note.replace('|', "\\|"),
                ));
            }
            Ok(out)
        }
    }
}
