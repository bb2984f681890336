//! `blindsat`: command-line front end for the blindsat-core experiments.
//!
//! Every subcommand builds its whole output before printing anything, so a
//! failure leaves stdout empty and writes one error record to stderr.
//! Exit status: 0 ok, 1 domain error, 2 usage or syntax error, 3 capacity.

use std::path::PathBuf;
use std::process::ExitCode;

use blindsat_core::{Limits, SearchOrder};
use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "blindsat",
    version,
    about = "Blind truth-table search workbench"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusTable {
    Classes,
    Rtable,
    Firsttrue,
    Lucky,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula under an assignment such as `p1=1,p2=0`.
    Eval {
        formula: String,
        #[arg(long, allow_hyphen_values = true)]
        assign: String,
    },
    /// Print the truth table.
    Table {
        formula: String,
        /// Comma-separated atom indices; defaults to the atoms of the formula.
        #[arg(long)]
        atoms: Option<String>,
        /// Append quasi-norms, essential atoms and the canonical representative.
        #[arg(long)]
        analyze: bool,
    },
    /// Print the arithmetized polynomial.
    Poly {
        formula: String,
        #[arg(long, conflicts_with = "factored")]
        characteristic: bool,
        /// Keep one factor per top-level conjunct.
        #[arg(long)]
        factored: bool,
    },
    /// List binary roots of the polynomial.
    Roots {
        formula: String,
        #[arg(long, conflicts_with = "sieve")]
        characteristic: bool,
        /// Find roots factor by factor and report the work done.
        #[arg(long)]
        sieve: bool,
    },
    /// Solve the polynomial equation for one variable at a point.
    Solve {
        formula: String,
        #[arg(long)]
        var: u32,
        /// Values of the other variables in index order, e.g. `0,1/2`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        characteristic: bool,
    },
    /// Build a formula true only at chosen positions of a search order.
    Adversary {
        #[arg(long)]
        order: SearchOrder,
        #[arg(long, group = "target")]
        row: Option<u64>,
        #[arg(long, group = "target")]
        rows: Option<String>,
        /// True only at the last position.
        #[arg(long, group = "target")]
        worst: bool,
    },
    /// Run blind search and print the trace.
    Search {
        formula: String,
        /// Defaults to the natural order over the formula's atoms.
        #[arg(long)]
        order: Option<SearchOrder>,
    },
    /// Run a search preceded by a checklist of known worst cases.
    Tower {
        /// Defaults to the adversary that defeats the tower.
        formula: Option<String>,
        #[arg(long)]
        order: SearchOrder,
        #[arg(long, default_value_t = 0)]
        size: usize,
    },
    /// Run a heuristic that explores a fixed set of positions.
    Heuristic {
        /// Defaults to the adversary the heuristic misses.
        formula: Option<String>,
        #[arg(long)]
        order: SearchOrder,
        #[arg(long, conflicts_with = "random")]
        rows: Option<String>,
        /// Explore this many positions drawn at random.
        #[arg(long)]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Distribute a CNF into DNF and read off satisfiability.
    Dnf {
        /// DIMACS CNF file; `-` reads stdin.
        file: Option<PathBuf>,
        /// Generate `n,k,m`: k clauses of m distinct atoms out of n.
        #[arg(long, conflicts_with = "file")]
        blowup: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report the disjunct count without distributing.
        #[arg(long)]
        count_only: bool,
    },
    /// Exact class-count tables.
    Census {
        #[arg(value_enum)]
        table: CensusTable,
        /// Atom counts, e.g. `1..5` or `3`.
        #[arg(long, default_value = "1..5")]
        n: String,
        /// Polynomial degrees for `rtable`.
        #[arg(long, default_value = "1")]
        s: String,
        /// Row indices for `firsttrue` and `lucky`; defaults to all.
        #[arg(long)]
        m: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprint!("{}", output::error_record("usage", first, Format::Csv));
            return ExitCode::from(2);
        }
    };
    if let Err(e) = Limits::from_env() {
        eprint!(
            "{}",
            output::error_record("usage", &e.to_string(), cli.format)
        );
        return ExitCode::from(2);
    }
    match commands::run(cli.command) {
        Ok(tables) => {
            print!("{}", output::render(&tables, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprint!(
                "{}",
                output::error_record(e.kind(), &e.to_string(), cli.format)
            );
            ExitCode::from(e.exit_code())
        }
    }
}
