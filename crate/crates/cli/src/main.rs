mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use crate::output::{emit, error_record, Format};

/// Error carrying a stable machine-readable code.
#[derive(Debug)]
pub struct Coded {
    pub code: &'static str,
    pub message: String,
}

impl Coded {
    pub fn new(code: &'static str, message: String) -> Self {
        Self { code, message }
    }
}

impl fmt::Display for Coded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Coded {}

/// Settings shared by every command after merging flags and config.
pub struct Context {
    pub format: Format,
}

#[derive(Parser, Debug)]
#[command(
    name = "tauber",
    version,
    about = "Counting cyclic number fields and checking Tauberian error terms"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "TAUBER_THREADS")]
    threads: Option<usize>,
    /// TOML file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List cyclic fields of degree n with discriminant at most X.
    Count(commands::CountArgs),
    /// Coefficients and partial sums of the discriminant series.
    Series(commands::SeriesArgs),
    /// Constants in the asymptotic counts.
    Constants(commands::ConstantsArgs),
    /// Twisted second moments of Dedekind zeta functions.
    Moments(commands::MomentsArgs),
    /// Compare counts against the Tauberian error bound.
    Check(commands::CheckArgs),
    /// Verify the zeta factorization of the local factors.
    Factorize(commands::FactorizeArgs),
}

fn run(cli: Cli) -> Result<()> {
    let cfg = config::load(cli.config.as_deref())?;
    let threads = cli.threads.or(cfg.threads);
    if let Some(t) = threads {
        if t == 0 {
            return Err(Coded::new("usage", "--threads must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Coded::new("internal", e.to_string()))?;
    }
    let ctx = Context {
        format: config::pick(cli.format, cfg.format, Format::Csv),
    };
    let out = cli.output.clone().or(cfg.output.clone());
    let (text, late) = match &cli.command {
        Command::Count(a) => (commands::count(a, &cfg, &ctx)?, None),
        Command::Series(a) => (commands::series(a, &cfg, &ctx)?, None),
        Command::Constants(a) => (commands::constants(a, &cfg, &ctx)?, None),
        Command::Moments(a) => (commands::moments(a, &cfg, &ctx)?, None),
        Command::Check(a) => (commands::check(a, &cfg, &ctx)?, None),
        Command::Factorize(a) => commands::factorize(a, &cfg, &ctx)?,
    };
    emit(&text, out.as_deref())?;
    match late {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn code_of(e: &anyhow::Error) -> &'static str {
    for cause in e.chain() {
        if let Some(c) = cause.downcast_ref::<tauber_core::Error>() {
            return c.code();
        }
        if let Some(c) = cause.downcast_ref::<Coded>() {
            return c.code;
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return "io";
        }
    }
    "internal"
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", error_record("usage", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = code_of(&e);
            eprintln!("{}", error_record(code, &format!("{e:#}")));
            if code == "usage" {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
