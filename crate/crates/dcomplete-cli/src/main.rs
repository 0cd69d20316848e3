//! Batch verification front-end: reproduces the reference tables, the
//! completeness certificates, the exceptional sets, and the graph-diameter
//! checks as machine-readable reports.
//!
//! Exit codes: 0 all checks pass, 2 a claimed check failed, 1 usage or
//! precondition error.

mod commands;
mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use report::Format;

#[derive(Parser)]
#[command(
    name = "dcomplete",
    version,
    about = "Verification suite for d-complete prime sequences and order-super-commuting graphs",
    after_help = "Reports are deterministic: identical flags on the same build yield identical\n\
                  rows (elapsed_ms in the JSON envelope is the one timing field)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Sieve / search bound, command-specific default otherwise
    #[arg(long, global = true)]
    limit: Option<u64>,

    /// Emit the report as a single JSON object on one line
    #[arg(long, global = true)]
    json: bool,

    /// Emit rows as CSV
    #[arg(long, global = true)]
    csv: bool,

    /// Exclude the prime 2 from criterion searches
    #[arg(long, global = true)]
    odd_only: bool,

    /// Validate against an embedded fixture (primes: table1, exceptional: paper)
    #[arg(long, global = true)]
    fixture: Option<String>,

    /// Reserved: every command is deterministic, there is no seed to disable
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Class prime sequences q(n) with partial sums S(n)
    Primes {
        /// Modulus of the residue class (1 means all primes)
        #[arg(short = 'd', long)]
        d: u64,
        /// Residue of the class
        #[arg(short = 'r', long)]
        r: u64,
        /// Emit the first N class primes (grows the sieve as needed)
        #[arg(long, conflicts_with = "limit")]
        count: Option<usize>,
    },
    /// Build and check a completeness certificate for (k0, n0)
    Certify {
        #[arg(short = 'd', long)]
        d: u64,
        #[arg(short = 'r', long)]
        r: u64,
        /// Completeness threshold: every m >= k0 must be representable
        #[arg(long)]
        k0: u64,
        /// Prefix length carrying the coefficient window
        #[arg(long)]
        n0: usize,
        /// Verify gap and doubling conditions for primes up to this bound
        #[arg(long)]
        check_limit: Option<u64>,
    },
    /// Validate an embedded double-representation table and recompute it
    Tables {
        /// Which table: 2 (class-split sums) or 3 (free odd-prime sums)
        which: u8,
        /// Skip fixture validation, only recompute witnesses
        #[arg(long)]
        recompute_only: bool,
    },
    /// Exceptional sets: integers without the claimed representations
    Exceptional {
        /// Single-class mode: "d,r"
        #[arg(long, value_parser = parse_class)]
        class: Option<(u64, u64)>,
        /// Double-representation mode: odd-primes or all-primes
        #[arg(long)]
        universe: Option<String>,
    },
    /// Order-quotient graphs: build one, or verify a range of n
    Graph {
        /// build: print one graph; verify: check diameters and witnesses
        mode: GraphMode,
        /// Single n
        #[arg(long)]
        n: Option<u64>,
        /// Inclusive range "lo..hi"
        #[arg(long, value_parser = parse_range)]
        range: Option<(u64, u64)>,
        /// Skip graphs, run the arithmetic criterion only
        #[arg(long)]
        criterion_only: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphMode {
    Build,
    Verify,
}

fn parse_class(s: &str) -> Result<(u64, u64), String> {
    let (d, r) = s.split_once(',').ok_or_else(|| format!("expected d,r (got {s:?})"))?;
    Ok((
        d.trim().parse().map_err(|e| format!("bad modulus: {e}"))?,
        r.trim().parse().map_err(|e| format!("bad residue: {e}"))?,
    ))
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi (got {s:?})"))?;
    Ok((
        lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?,
        hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?,
    ))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if cli.seedless {
        eprintln!(
            "error: --seedless is reserved; no randomness exists anywhere, \
             so there is no seed to disable"
        );
        std::process::exit(1);
    }
    let format = match (cli.json, cli.csv) {
        (true, true) => {
            eprintln!("error: --json and --csv are mutually exclusive");
            std::process::exit(1);
        }
        (true, false) => Format::Json,
        (false, true) => Format::Csv,
        (false, false) => Format::Human,
    };

    let outcome = match cli.command {
        Command::Primes { d, r, count } => {
            commands::cmd_primes(d, r, count, cli.limit, cli.fixture.as_deref(), format)
        }
        Command::Certify { d, r, k0, n0, check_limit } => {
            commands::cmd_certify(d, r, k0, n0, cli.limit, check_limit, format)
        }
        Command::Tables { which, recompute_only } => {
            commands::cmd_tables(which, recompute_only, format)
        }
        Command::Exceptional { class, universe } => commands::cmd_exceptional(
            class,
            universe.as_deref(),
            cli.limit,
            cli.fixture.as_deref(),
            format,
        ),
        Command::Graph { mode, n, range, criterion_only } => {
            let range = match (n, range) {
                (Some(n), None) => (n, n),
                (None, Some(r)) => r,
                (None, None) => (4, 60),
                (Some(_), Some(_)) => {
                    eprintln!("error: give either --n or --range, not both");
                    std::process::exit(1);
                }
            };
            match mode {
                GraphMode::Build => {
                    if range.0 != range.1 {
                        eprintln!("error: graph build needs a single --n");
                        std::process::exit(1);
                    }
                    commands::cmd_graph_build(range.0, format)
                }
                GraphMode::Verify => commands::cmd_graph_verify(
                    range.0,
                    range.1,
                    criterion_only,
                    cli.odd_only,
                    format,
                ),
            }
        }
    };

    match outcome {
        Ok(true) => {}
        Ok(false) => std::process::exit(2),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
    }
}
