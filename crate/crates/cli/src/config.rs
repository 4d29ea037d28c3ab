use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use spgraph_core::verify::Tolerances;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "SPGRAPH_PRECISION", default_value_t = 50,
          value_parser = clap::value_parser!(u32).range(30..))]
    pub precision: u32,
    /// Default x-order for series computations.
    #[arg(long, global = true, default_value_t = 30,
          value_parser = clap::value_parser!(u64).range(4..))]
    pub series_order: u64,
    /// Largest n the brute-force oracle may enumerate.
    #[arg(long, global = true, default_value_t = 6,
          value_parser = clap::value_parser!(u64).range(1..=8))]
    pub oracle_cap: u64,
    /// Tolerance override, `NAME=VALUE`; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// JSON object of tolerance overrides.
    #[arg(long, global = true, value_name = "FILE")]
    pub tolerances: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here (atomically) instead of stdout.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub precision_digits: u32,
    pub series_order: usize,
    pub oracle_n_cap: usize,
    pub tolerances: Tolerances,
    pub format: Format,
    pub output: Option<PathBuf>,
}

pub fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))
}

impl RunConfig {
    pub fn from_args(args: &GlobalArgs) -> CliResult<Self> {
        let mut tolerances = match &args.tolerances {
            Some(path) => serde_json::from_str(&read_input(path)?)
                .map_err(|e| CliError::Usage(format!("tolerance file {}: {e}", path.display())))?,
            None => Tolerances::default(),
        };
        for item in &args.tol {
            let (name, value) = item
                .rsplit_once('=')
                .ok_or_else(|| CliError::Usage(format!("--tol expects NAME=VALUE, got {item:?}")))?;
            let value: f64 = value
                .trim()
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite() && *v >= 0.0)
                .ok_or_else(|| CliError::Usage(format!("bad tolerance value in {item:?}")))?;
            tolerances.0.insert(name.trim().to_string(), value);
        }
        Ok(RunConfig {
            precision_digits: args.precision,
            series_order: args.series_order as usize,
            oracle_n_cap: args.oracle_cap as usize,
            tolerances,
            format: args.format,
            output: args.output.clone(),
        })
    }
}
