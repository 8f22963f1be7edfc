//! Command-line surface: `verify`, `chain`, and `count` subcommands that run
//! the deterministic suites, print a summary table, and write a JSON report.
//!
//! Exit codes: 0 when every asserted check passes, 1 when any check fails,
//! and 2 for configuration errors (including the enumeration size guard).

use crate::geometry::GeomError;
use crate::par::ExecMode;
use crate::report::Report;
use crate::suites::{
    chain_report, count_report, parse_point_spec, verify_report, ConfigError, CountTarget,
    SuiteConfig, SuiteName, DEFAULT_BUDGET, DEFAULT_TRIALS,
};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "e6geom",
    version,
    about = "Exact finite-field engine for an exceptional incidence geometry and its Weyl-group shadow"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct CommonOpts {
    /// Prime modulus of the base field (>= 5).
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    /// Quadratic non-residue defining the extension (default: smallest).
    #[arg(long)]
    pub d: Option<u64>,
    /// Seed for all randomized trials.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Base trial count; individual checks scale it per their cost.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: u64,
    /// Retry budget for randomized searches (chains, samplers).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the JSON report to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run heavy loops sequentially even when parallel support is built in.
    #[arg(long)]
    pub sequential: bool,
    /// Include wall-clock timings in the report (no longer byte-reproducible).
    #[arg(long)]
    pub timings: bool,
}

impl CommonOpts {
    fn config(&self) -> Result<SuiteConfig, ConfigError> {
        let mode = if self.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
        SuiteConfig::resolve(
            self.p,
            self.d,
            self.seed,
            self.trials,
            self.budget,
            mode,
            self.timings,
        )
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites and report every check.
    Verify {
        #[command(flatten)]
        opts: CommonOpts,
        /// octonion | albert | brown | geometry | weyl | all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Connect two points by a two-line chain and certify the incidences.
    Chain {
        #[command(flatten)]
        opts: CommonOpts,
        /// E1 | E2 | E3 | random | 54 comma-separated coordinates
        #[arg(long, default_value = "random")]
        from: String,
        /// E1 | E2 | E3 | random | 54 comma-separated coordinates
        #[arg(long, default_value = "random")]
        to: String,
    },
    /// Exact structural counts: special-intersection | line-quadric.
    Count {
        #[command(flatten)]
        opts: CommonOpts,
        what: String,
    },
}

fn emit(report: &Report, out: Option<&PathBuf>) -> i32 {
    print!("{}", report.render_table());
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return 2;
        }
    }
    report.exit_code()
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome: Result<(Report, Option<PathBuf>), String> = match cli.command {
        Command::Verify { opts, suite } => (|| {
            let suite = SuiteName::parse(&suite).map_err(|e| e.to_string())?;
            let cfg = opts.config().map_err(|e| e.to_string())?;
            Ok((verify_report(&cfg, suite), opts.out))
        })(),
        Command::Chain { opts, from, to } => (|| {
            let from = parse_point_spec(&from).map_err(|e| e.to_string())?;
            let to = parse_point_spec(&to).map_err(|e| e.to_string())?;
            let cfg = opts.config().map_err(|e| e.to_string())?;
            let report = chain_report(&cfg, &from, &to).map_err(|e| e.to_string())?;
            Ok((report, opts.out))
        })(),
        Command::Count { opts, what } => (|| {
            let what = CountTarget::parse(&what).map_err(|e| e.to_string())?;
            let cfg = opts.config().map_err(|e| e.to_string())?;
            match count_report(&cfg, what) {
                Ok(report) => Ok((report, opts.out)),
                Err(GeomError::TooLarge { size, cap }) => Err(format!(
                    "enumeration guard: {size} projective classes exceed the cap of {cap}"
                )),
                Err(e) => Err(e.to_string()),
            }
        })(),
    };
    match outcome {
        Ok((report, out)) => emit(&report, out.as_ref()),
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::parse_from([
            "e6geom", "verify", "--suite", "weyl", "--p", "7", "--seed", "3", "--trials", "10",
            "--sequential",
        ]);
        match cli.command {
            Command::Verify { opts, suite } => {
                assert_eq!(suite, "weyl");
                assert_eq!(opts.p, 7);
                assert_eq!(opts.seed, 3);
                assert!(opts.sequential);
                assert!(opts.config().is_ok());
            }
            _ => panic!("expected verify"),
        }
        let cli = Cli::parse_from(["e6geom", "count", "special-intersection"]);
        match cli.command {
            Command::Count { what, .. } => assert_eq!(what, "special-intersection"),
            _ => panic!("expected count"),
        }
    }

    #[test]
    fn bad_config_is_a_config_error() {
        let cli = Cli::parse_from(["e6geom", "verify", "--p", "4", "--suite", "weyl"]);
        match cli.command {
            Command::Verify { opts, .. } => {
                assert!(matches!(opts.config(), Err(ConfigError::NotPrime(4))));
            }
            _ => panic!("expected verify"),
        }
    }
}
