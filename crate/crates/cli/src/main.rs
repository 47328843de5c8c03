use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ibd_cli::config::Config;
use ibd_cli::params::parse_assignment;
use ibd_cli::{cases, render, run_case, verify_all, CliError, Format, RunOptions, Status};

/// Integration by differentiation: run method-versus-oracle cases.
#[derive(Parser)]
#[command(name = "ibd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List case ids with descriptions.
    List,
    /// Run one case.
    Run {
        case: String,
        /// Override a parameter, as NAME=VALUE.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Evaluate step functions at their jump as 1/2.
        #[arg(long)]
        heaviside_midpoint: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run every case whose id matches a glob.
    VerifyAll {
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Override case tolerances.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Key-value file; flags given here take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

struct Resolved {
    opts: RunOptions,
    format: Format,
    config: Config,
}

fn resolve(common: &Common, midpoint_flag: bool) -> Result<Resolved, CliError> {
    let config = match &common.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let format = match (common.format, &config.format) {
        (Some(f), _) => f,
        (None, Some(s)) => s.parse()?,
        (None, None) => Format::default(),
    };
    let opts = RunOptions {
        tol: common.tol.or(config.tol),
        seed: common.seed.or(config.seed).unwrap_or(RunOptions::default().seed),
        heaviside_midpoint: midpoint_flag || config.heaviside_midpoint.unwrap_or(false),
    };
    Ok(Resolved { opts, format, config })
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::List => {
            for case in cases() {
                println!("{:<20} {} [{}]", case.id, case.description, case.anchor);
            }
            Ok(0)
        }
        Command::Run { case, params, heaviside_midpoint, common } => {
            let r = resolve(&common, heaviside_midpoint)?;
            let mut given: BTreeMap<String, String> = r.config.params.clone();
            for p in &params {
                let (k, v) = parse_assignment(p)?;
                given.insert(k, v);
            }
            let record = run_case(&case, &given, &r.opts)?;
            print!("{}", render(std::slice::from_ref(&record), r.format)?);
            Ok(if record.status == Status::Fail { 1 } else { 0 })
        }
        Command::VerifyAll { filter, common } => {
            let r = resolve(&common, false)?;
            let filter = filter.or(r.config.filter.clone()).unwrap_or_else(|| "*".to_string());
            let (records, code) = verify_all(&filter, &r.opts)?;
            print!("{}", render(&records, r.format)?);
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
