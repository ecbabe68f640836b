//! `atomwork` command-line front end.

mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{RunReport, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "atomwork",
    version,
    about = "Exact combinatorics on finite set families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the machine-readable report (JSON) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Search-node budget for exponential searches.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Exit with status 1 on a negative verdict.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Args, Debug)]
struct Input {
    /// Family file (incidence or structured format).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct Target {
    /// Target points, comma separated.
    #[arg(
        long = "B",
        value_delimiter = ',',
        value_name = "POINTS",
        conflicts_with = "from_file"
    )]
    points: Option<Vec<usize>>,

    /// Use the target stored in the family file.
    #[arg(long = "B-from-file", id = "from_file")]
    from_file: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Boolean atoms of a subfamily.
    Atoms {
        #[command(flatten)]
        input: Input,
        /// Sets by name or index, comma separated (default: all).
        #[arg(long, value_delimiter = ',')]
        sets: Option<Vec<String>>,
        /// Omit the cell of points lying in none of the chosen sets.
        #[arg(long)]
        no_zero_cell: bool,
        #[command(flatten)]
        target: Target,
    },
    /// Dual shatter function at one size or over a range.
    Shatter {
        #[command(flatten)]
        input: Input,
        #[arg(long, required_unless_present = "profile", conflicts_with = "profile")]
        n: Option<usize>,
        /// Compute sizes 1..=N and a fitted growth exponent.
        #[arg(long, value_name = "N")]
        profile: Option<usize>,
        /// Greedy lower bound instead of exact search.
        #[arg(long)]
        greedy: bool,
    },
    /// Test the (p,q)-property.
    Pq {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Minimum partition into consistent classes.
    Pierce {
        #[command(flatten)]
        input: Input,
        /// Greedy transversal only.
        #[arg(long)]
        greedy: bool,
    },
    /// Maximum pairwise-disjoint subfamily, and with a target the greedy
    /// disjoint sequence avoiding it.
    Disjoint {
        #[command(flatten)]
        input: Input,
        /// Stop once this many disjoint sets are found.
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        target: Target,
    },
    /// Build and verify a quadratic witness chain.
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        /// Backtrack over all candidate choices.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        target: Target,
    },
    /// Write a seeded family file.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        universe: Option<usize>,
        #[arg(long, default_value_t = 32)]
        grid_side: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Replace empty random sets by a single random point.
        #[arg(long)]
        nonempty: bool,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Family output file (default: standard output).
        #[arg(long, value_name = "FILE")]
        family: Option<PathBuf>,
    },
    /// Re-check a report against its family file.
    Verify {
        /// Report written with --out.
        report: PathBuf,
        /// Family file (default: the --in recorded in the report).
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Intervals,
    HalfplaneGrid,
    Random,
    WitnessRich,
}

/// How a completed command should map to an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    /// Negative analysis result; exit 1 under `--strict`.
    Negative,
    /// Failed check; always exit 1.
    Failed,
    /// Budget ran out before the answer was proved; exit 3.
    Incomplete,
}

pub struct Outcome {
    pub text: String,
    pub results: report::Results,
    pub input_digest: Option<String>,
    pub verdict: Verdict,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Budget(String),
}

impl From<atomwork::Error> for Failure {
    fn from(e: atomwork::Error) -> Self {
        match e {
            atomwork::Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };

    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }

    let started = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };

    print!("{}", outcome.text);
    if let Some(path) = &cli.out {
        let run = RunReport {
            v: SCHEMA_VERSION.to_string(),
            command: report::command_echo(&args[1..]),
            input_digest: outcome.input_digest,
            results: outcome.results,
            wall_time_ms: started.elapsed().as_millis() as u64,
        };
        if let Err(e) = report::write_report(path, &run) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    match outcome.verdict {
        Verdict::Positive => ExitCode::SUCCESS,
        Verdict::Negative if cli.strict => ExitCode::from(1),
        Verdict::Negative => ExitCode::SUCCESS,
        Verdict::Failed => ExitCode::from(1),
        Verdict::Incomplete => ExitCode::from(3),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let budget = cli.budget;
    match &cli.command {
        Command::Atoms {
            input,
            sets,
            no_zero_cell,
            target,
        } => commands::atoms(
            &input.input,
            sets.as_deref(),
            !no_zero_cell,
            target.points.as_deref(),
            target.from_file,
        ),
        Command::Shatter {
            input,
            n,
            profile,
            greedy,
        } => commands::shatter(&input.input, *n, *profile, *greedy, budget),
        Command::Pq { input, p, q } => commands::pq(&input.input, *p, *q, budget),
        Command::Pierce { input, greedy } => commands::pierce(&input.input, *greedy, budget),
        Command::Disjoint { input, cap, target } => commands::disjoint(
            &input.input,
            *cap,
            target.points.as_deref(),
            target.from_file,
        ),
        Command::Witness {
            input,
            n,
            exhaustive,
            target,
        } => commands::witness(
            &input.input,
            *n,
            *exhaustive,
            target.points.as_deref(),
            target.from_file,
            budget,
        ),
        Command::Generate {
            kind,
            count,
            universe,
            grid_side,
            density,
            nonempty,
            depth,
            seed,
            family,
        } => {
            let need = |v: Option<usize>, flag: &str| {
                v.ok_or_else(|| Failure::Input(format!("{flag} is required for this kind")))
            };
            let spec = match kind {
                Kind::Intervals => atomwork::GeneratorSpec::Intervals {
                    count: need(*count, "--count")?,
                    universe_size: need(*universe, "--universe")?,
                    seed: *seed,
                },
                Kind::HalfplaneGrid => atomwork::GeneratorSpec::HalfplaneGrid {
                    count: need(*count, "--count")?,
                    grid_side: *grid_side,
                    seed: *seed,
                },
                Kind::Random => atomwork::GeneratorSpec::Random {
                    count: need(*count, "--count")?,
                    universe_size: need(*universe, "--universe")?,
                    density: *density,
                    seed: *seed,
                    nonempty: *nonempty,
                },
                Kind::WitnessRich => atomwork::GeneratorSpec::WitnessRich {
                    depth: need(*depth, "--depth")?,
                    seed: *seed,
                },
            };
            commands::generate(spec, family.as_deref())
        }
        Command::Verify { report, input } => verify::run(report, input.as_deref()),
    }
}
