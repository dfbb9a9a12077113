//! `abhy`: command-line access to every stage of the pipeline.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 invalid input, 3 the
//! exploration cap was exceeded.

mod commands;
mod doc;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abhy_core::{Rational, DEFAULT_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::doc::{parse_rational, MatrixDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] abhy_core::Error),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(abhy_core::Error::CapExceeded { .. }) => 3,
            CliError::Core(abhy_core::Error::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Off,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// Reduced moment image equals U_c, and the normal fan of A_c is the g-vector fan.
    Theorem,
    /// Mutating B^univ agrees with recomputing it from the mutated seed.
    Univ,
    /// Newton polytopes of F-polynomials equal A_{e_i}, and their products Minkowski sums.
    Newton,
    /// Normal fan of A_c for the given c.
    Fan,
}

#[derive(Args, Clone, Debug)]
pub struct Options {
    /// Mutation directions, 1-based, applied left to right.
    #[arg(long, global = true, value_delimiter = ',')]
    pub word: Vec<usize>,
    /// Mutations applied to B before anything else, for an alternate initial seed.
    #[arg(long, global = true, value_delimiter = ',')]
    pub seed_mutations: Vec<usize>,
    /// Slice parameters c_{n+1},…,c_v (default all 1).
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_rational)]
    pub c: Option<Vec<Rational>>,
    /// Reduction level ĉ of length v (default n zeros then ones).
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_rational)]
    pub chat: Option<Vec<Rational>>,
    /// Cap on the number of clusters explored.
    #[arg(long, global = true, env = "ABHY_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Decimal places in OFF output.
    #[arg(long, global = true, default_value_t = 6)]
    pub precision: usize,
    /// Seed for random levels.
    #[arg(long, global = true, default_value_t = 0)]
    pub rng_seed: u64,
    /// Number exploration breadth-first instead of depth-first.
    #[arg(long, global = true)]
    pub breadth_first: bool,
    /// Emit A_c instead of U_c.
    #[arg(long, global = true)]
    pub project: bool,
}

#[derive(Parser, Debug)]
#[command(name = "abhy", version, about = "Cluster algebras, ABHY associahedra and their moment-map slices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate an exchange matrix along --word.
    Mutate { input: Option<PathBuf> },
    /// Enumerate cluster variables and clusters.
    Explore { input: Option<PathBuf> },
    /// g-vectors of the principal-coefficient algebra.
    Gvectors { input: Option<PathBuf> },
    /// F-polynomials of the principal-coefficient algebra.
    Fpolys { input: Option<PathBuf> },
    /// The universal extension B^univ.
    Univ { input: Option<PathBuf> },
    /// The kernel matrix K and the equations K·(u, w) = ĉ.
    Kernel { input: Option<PathBuf> },
    /// The hyperplanes cutting out U_c.
    Slice { input: Option<PathBuf> },
    /// Vertices of U_c, or of A_c with --project.
    Polytope { input: Option<PathBuf> },
    /// Newton polytope of one F-polynomial.
    Newton {
        input: Option<PathBuf>,
        /// 1-based variable index.
        #[arg(long)]
        index: usize,
    },
    /// Run a verification and report each check.
    Verify {
        target: VerifyTarget,
        input: Option<PathBuf>,
        /// Check this many random levels instead of --chat.
        #[arg(long)]
        random: Option<usize>,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<MatrixDocument, CliError> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    MatrixDocument::parse(&text)
}

fn run(cli: &Cli) -> Result<commands::Output, CliError> {
    let opts = &cli.options;
    match &cli.command {
        Command::Mutate { input } => commands::mutate(&read_input(input)?, opts),
        Command::Explore { input } => commands::explore(&read_input(input)?, opts),
        Command::Gvectors { input } => commands::gvectors(&read_input(input)?, opts),
        Command::Fpolys { input } => commands::fpolys(&read_input(input)?, opts),
        Command::Univ { input } => commands::univ(&read_input(input)?, opts),
        Command::Kernel { input } => commands::kernel(&read_input(input)?, opts),
        Command::Slice { input } => commands::slice(&read_input(input)?, opts),
        Command::Polytope { input } => commands::polytope(&read_input(input)?, opts),
        Command::Newton { input, index } => commands::newton(&read_input(input)?, opts, *index),
        Command::Verify { target, input, random } => commands::verify(&read_input(input)?, opts, *target, *random),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
