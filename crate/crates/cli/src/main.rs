//! `tpqr`: builds the two algebras for a triple `(p,q,r)`, runs the comparison
//! suites and emits deterministic JSON.

mod commands;
mod json;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, CommandFactory, Parser, Subcommand};
use commands::{Failure, Side, Suite};
use tpqr_core::Triple;

const SOFT_LIMIT: u32 = 50;

#[derive(Parser, Debug)]
#[command(name = "tpqr", version, about = "Exact checks for the T_{p,q,r} mirror pair")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct TripleArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    q: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Objects, graded dimensions and structure constants of one algebra.
    Build {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_enum, default_value = "fukaya")]
        side: Side,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Check {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Apply a mutation word such as "2,-1,3" (negative = right mutation).
    Mutate {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Cokernel of I - S on the Grothendieck group.
    K0 {
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Dual of a cusp cycle given as comma-separated entries.
    Dual {
        #[arg(long)]
        cycle: String,
    },
    /// Resolution cycle of the triangle singularity and its dual.
    Triangle {
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Named divisor classes and vanishing-cycle classes.
    Classes {
        #[command(flatten)]
        triple: TripleArgs,
    },
}

fn triple_of(a: TripleArgs) -> Triple {
    if a.p.max(a.q).max(a.r) > SOFT_LIMIT {
        eprintln!("warning: entries above {SOFT_LIMIT} make the basis grow quadratically");
    }
    Triple::new(a.p, a.q, a.r).expect("clap enforces positive entries")
}

fn run(command: Command) -> commands::Outcome {
    match command {
        Command::Build { triple, side } => commands::build(triple_of(triple), side),
        Command::Check { triple, suite } => commands::check(triple_of(triple), suite),
        Command::Mutate { triple, word } => commands::mutate(triple_of(triple), &word),
        Command::K0 { triple } => commands::k0(triple_of(triple)),
        Command::Dual { cycle } => commands::dual(&cycle),
        Command::Triangle { triple } => commands::triangle(triple_of(triple)),
        Command::Classes { triple } => commands::classes(triple_of(triple)),
    }
}

fn emit(value: &serde_json::Value, out: Option<&PathBuf>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (value, code) = match run(cli.command) {
        Ok(v) => (v, 0),
        Err(Failure::Checks(v)) => (v, 1),
        Err(Failure::Domain(e)) => (commands::error_json(&e), 1),
        Err(Failure::Usage(msg)) => {
            Cli::command()
                .error(clap::error::ErrorKind::ValueValidation, msg)
                .exit();
        }
    };
    if let Err(e) = emit(&value, cli.out.as_ref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    ExitCode::from(code)
}
