//! `endtn`: batch front end for computations in `End(T_n)`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity guard.

mod commands;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use endtn::{Error, Relation, Transformation};

use commands::Config;
use report::{Format, Report};

#[derive(Parser)]
#[command(name = "endtn", version, about = "Computations in the endomorphism monoid of the full transformation semigroup")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Degree of T_n.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Sample count; its meaning depends on the verb.
    #[arg(long, global = true)]
    samples: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// L, R, H, D, J, or a starred or tilde variant such as R* or L~.
    #[arg(long, global = true)]
    relation: Option<Relation>,

    /// Run the extra brute-force checks the verb supports.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// List every element of End(T_n).
    Enumerate,
    /// |P_n|, |End(T_n)|, block sizes, idempotents, orbits and ideals.
    Counts,
    /// Compare the symbolic product with composition of value maps.
    VerifyMult,
    /// Classes of L, R, H, D or J.
    Green,
    /// Classes of a starred or tilde relation, with the abundance report.
    Extended,
    /// The ideals of End(T_n), as a form and the orbits they contain.
    Ideals,
    /// Idempotents grouped by rank.
    Idempotents,
    /// Regular elements.
    Regular,
    /// A minimal generating set (n = 5, 6).
    Gens,
    /// Soundness of the presentation and normal forms of random or given words.
    PresentationCheck {
        /// File with one word per line, symbols separated by spaces.
        #[arg(long)]
        words: Option<PathBuf>,
    },
    /// Fix(t, e), for one pair or for every orbit representative.
    Fix {
        /// Images of t, 1-based, separated by commas or spaces.
        #[arg(long)]
        t: Option<Transformation>,
        #[arg(long)]
        e: Option<Transformation>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Capacity { .. }) => 3,
            CliError::Lib(Error::Inconsistent(_) | Error::RewriteBudgetExceeded { .. }) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage: {s}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let (t, e, words) = match &cli.command {
        Command::Fix { t, e } => (*t, *e, None),
        Command::PresentationCheck { words } => (None, None, words.clone()),
        _ => (None, None, None),
    };
    let cfg = Config { n: cli.n, seed: cli.seed, samples: cli.samples, relation: cli.relation, verify: cli.verify, t, e, words };
    match cli.command {
        Command::Enumerate => commands::enumerate(&cfg),
        Command::Counts => commands::counts(&cfg),
        Command::VerifyMult => commands::verify_mult(&cfg),
        Command::Green => commands::green(&cfg),
        Command::Extended => commands::extended(&cfg),
        Command::Ideals => commands::ideals(&cfg),
        Command::Idempotents => commands::idempotents(&cfg),
        Command::Regular => commands::regular(&cfg),
        Command::Gens => commands::gens(&cfg),
        Command::PresentationCheck { .. } => commands::presentation_check(&cfg),
        Command::Fix { .. } => commands::fix(&cfg),
    }
}

fn emit(cli: &Cli, report: &Report) -> io::Result<()> {
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.render(cli.format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            report.render(cli.format, &mut w)?;
            w.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("usage: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = emit(&cli, &report).or_else(|e| if e.kind() == io::ErrorKind::BrokenPipe { Ok(()) } else { Err(e) }) {
        eprintln!("error: i/o: {e}");
        return ExitCode::from(2);
    }
    match &report.failure {
        Some(f) => {
            eprintln!("verification failed: {f}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
