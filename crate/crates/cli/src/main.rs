mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ordkit::search::Predicate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Sectionally pseudocomplemented posets: tables, completions, ordinal
/// sums, congruences and small-poset census.
#[derive(Debug, Parser)]
#[command(name = "ordkit", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a poset and print witnesses for the properties that fail.
    Check { input: PathBuf },
    /// Print the table of the sectional pseudocomplement.
    Table { input: PathBuf },
    /// Dedekind-MacNeille completion.
    Complete {
        input: PathBuf,
        /// Write the cut sidecar JSON here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Build a generalized ordinal sum from a sum-family file.
    Sum {
        input: PathBuf,
        /// Check that the completion of the sum is the sum of the yoked family.
        #[arg(long)]
        verify_dm: bool,
        /// Check the summand-wise formula for the sum and its completion.
        #[arg(long)]
        verify_secpc: bool,
    },
    /// Quotient by the congruence given as a partition JSON file.
    Quotient { input: PathBuf, partition: PathBuf },
    /// List all congruences of (P, *).
    Congruences { input: PathBuf },
    /// Census of all posets with `n` elements, or a search for a predicate.
    Enumerate {
        n: usize,
        /// List the `n`-element posets (up to isomorphism) satisfying this.
        #[arg(long, value_parser = parse_predicate)]
        predicate: Option<Predicate>,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Largest size allowed (at most 8).
        #[arg(long, default_value_t = ordkit::search::DEFAULT_CAP)]
        cap: usize,
    },
    /// Hasse diagram in DOT.
    ExportDot { input: PathBuf },
}

fn parse_predicate(s: &str) -> Result<Predicate, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Predicate::ALL.iter().map(|p| p.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(out) = &e.stdout {
                print!("{out}");
            }
            eprintln!("{}", e.stderr());
            ExitCode::from(e.code())
        }
    }
}
