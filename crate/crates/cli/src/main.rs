//! `level2`: tables of level-2 Stirling and poly-Cauchy numbers, series
//! dumps and exact identity verification.
//!
//! Exit codes: 0 success or pass, 1 an identity (or route comparison)
//! failed, 2 usage error.

mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use level2_core::builtin::Builtin;
use level2_core::polycauchy::Route;
use level2_core::verify::IdentityId;

#[derive(Debug, Parser)]
#[command(name = "level2", version, about = "Exact level-2 poly-Cauchy numbers and their identities")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format; `text` applies to `verify` only. Defaults to csv for
    /// tables and text for verify.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// JSON cache of triangle rows and poly-Cauchy values.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Worker threads for verification sweeps.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,

    /// Truncation order for generating-function routes; raised automatically
    /// when a request needs more.
    #[arg(long, global = true, value_name = "M", default_value_t = 40)]
    pub order: usize,

    /// Report cache reuse on stderr.
    #[arg(long, global = true)]
    pub stats: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Formula,
    Series,
    Both,
}

impl RouteArg {
    pub fn routes(self) -> Vec<Route> {
        match self {
            RouteArg::Formula => vec![Route::Formula],
            RouteArg::Series => vec![Route::Series],
            RouteArg::Both => vec![Route::Formula, Route::Series],
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level-2 Stirling numbers of the first kind, rows 0..=nmax.
    Stirling2 {
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Apply (-1)^(n-m), giving the central factorial numbers t(2n, 2m).
        #[arg(long)]
        signed: bool,
    },
    /// Poly-Cauchy numbers with level 2, C_{2n}^{(k)} for n = 0..=nmax.
    Polycauchy {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Formula)]
        route: RouteArg,
    },
    /// Ordinary coefficients of a built-in series through --order.
    Series {
        #[arg(long, value_parser = parse_builtin)]
        name: Builtin,
        /// Required for lif2k and lif_k.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Check one identity exactly over its range.
    Verify {
        #[arg(long, value_parser = parse_identity)]
        identity: IdentityId,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// k for thm1 and cor1, m for arcsinh_power (default 1).
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
}

fn parse_builtin(s: &str) -> Result<Builtin, String> {
    s.parse().map_err(|e: level2_core::Error| e.to_string())
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e: level2_core::Error| e.to_string())
}

/// Outcome of a command, mapped onto the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("level2: {e}");
            ExitCode::from(2)
        }
    }
}
