//! `awbi`: build generators, check relations, scan pairs and run the self-test.

mod commands;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use awbi_core::{BackendKind, Process, RelationKind};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "awbi", version, about = "Exact checks for higher-rank Askey-Wilson and q-Bannai-Ito generators")]
pub struct Cli {
    /// Algebra backend.
    #[arg(long, global = true, default_value = "aw")]
    pub backend: BackendKind,
    /// Worker threads for suites and scans.
    #[arg(long, global = true, env = "AWBI_WORKERS", default_value_t = default_workers())]
    pub workers: usize,
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub output: Output,
    /// Shorthand for `--output json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also evaluate relations in exact matrix representations (aw only).
    #[arg(long, global = true)]
    pub numeric: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest arity accepted by `scan`.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_scan_n: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a generator and print its normal form.
    Build {
        /// Index set, e.g. `1,3-5,8`.
        #[arg(long = "set")]
        set: String,
        #[arg(long)]
        n: usize,
        /// right, left, mixed:j or derived.
        #[arg(long, default_value = "right")]
        process: Process,
        /// Print every term.
        #[arg(long)]
        full: bool,
    },
    /// Check one relation; exit status 0 iff it holds.
    Check {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "star")]
        relation: RelationKind,
    },
    /// Classify every ordered pair of subsets of `[1;n]`.
    Scan {
        #[arg(long)]
        n: usize,
    },
    /// Run every verification suite on both backends.
    Selftest {
        /// Largest arity for the parametrized families.
        #[arg(long, default_value_t = 7)]
        max_arity: usize,
        /// Arity for the exhaustive suites.
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Validated runtime settings shared by all commands.
#[derive(Debug, Clone)]
pub struct Config {
    pub backend: BackendKind,
    pub workers: usize,
    pub output: Output,
    pub numeric: bool,
    pub seed: u64,
    pub max_scan_n: usize,
}

impl Config {
    fn from_cli(cli: &Cli) -> Result<Self, String> {
        if cli.workers == 0 {
            return Err("--workers must be at least 1".into());
        }
        if cli.max_scan_n < 2 {
            return Err("--max-scan-n must be at least 2".into());
        }
        Ok(Config {
            backend: cli.backend,
            workers: cli.workers,
            output: if cli.json { Output::Json } else { cli.output },
            numeric: cli.numeric,
            seed: cli.seed,
            max_scan_n: cli.max_scan_n,
        })
    }

    pub fn json(&self) -> bool {
        self.output == Output::Json
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match Config::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Build { set, n, process, full } => commands::build(&cfg, &mut out, set, *n, *process, *full),
        Command::Check { a, b, n, relation } => commands::check(&cfg, &mut out, a, b, *n, *relation),
        Command::Scan { n } => commands::scan(&cfg, &mut out, *n),
        Command::Selftest { max_arity, n } => selftest::run(&cfg, &mut out, *max_arity, *n),
    };
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["awbi", "check", "--A", "1,2", "--B", "2,3", "--n", "3", "--backend", "bi", "--json"]).unwrap();
        let cfg = Config::from_cli(&cli).unwrap();
        assert_eq!(cfg.backend, BackendKind::Bi);
        assert!(cfg.json());
        match cli.command {
            Command::Check { relation, n, .. } => assert_eq!((relation, n), (RelationKind::Star, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parses_processes() {
        let cli = Cli::try_parse_from(["awbi", "build", "--set", "1,3", "--n", "3", "--process", "mixed:2"]).unwrap();
        assert!(matches!(cli.command, Command::Build { process: Process::Mixed(2), .. }));
        assert!(Cli::try_parse_from(["awbi", "build", "--set", "1", "--n", "1", "--process", "sideways"]).is_err());
    }

    #[test]
    fn rejects_invalid_config() {
        let cli = Cli::try_parse_from(["awbi", "--max-scan-n", "1", "scan", "--n", "2"]).unwrap();
        assert!(Config::from_cli(&cli).is_err());
        let cli = Cli::try_parse_from(["awbi", "--workers", "0", "scan", "--n", "2"]).unwrap();
        assert!(Config::from_cli(&cli).is_err());
    }
}
