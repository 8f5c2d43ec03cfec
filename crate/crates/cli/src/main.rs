//! `qsalg`: validate finite structures and check theorems about them.

mod commands;
mod document;
mod enumerate;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use qsalg_core::{Budget, ModuleLaws};

use commands::{CheckArgs, Settings, Theorem, ValidateKind};
use enumerate::EnumerateKind;
use error::CliError;
use report::{InputDigest, Outcome, Report};

#[derive(Parser)]
#[command(name = "qsalg", version, about = "Verifier for finite quantale-valued sup-algebras")]
struct Cli {
    /// Print the machine report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the validator for one kind of declaration.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: ValidateKind,
        /// Accept actions without `1*a = a`.
        #[arg(long)]
        lax_modules: bool,
    },
    /// Check a theorem on a declared structure and emit its certificate.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        lax_modules: bool,
        /// Algebra, module or q-order to check; defaults to the first declared.
        #[arg(long)]
        subject: Option<String>,
        /// Plain algebra generating the free object.
        #[arg(long)]
        generators: Option<String>,
    },
    /// Write a census of small structures.
    Enumerate {
        #[arg(long, value_enum)]
        kind: EnumerateKind,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Re-verify a certificate without the construction code.
    Recheck { certificate: PathBuf },
    /// Built-in and shipped structures.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
}

fn budget(seed: Option<u64>) -> Result<Budget, CliError> {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var("QSALG_THRESHOLD") {
        b.threshold =
            v.trim().parse().map_err(|_| CliError::Parse(format!("QSALG_THRESHOLD `{v}` is not a number")))?;
    }
    if let Some(s) = seed {
        b.seed = s;
    }
    Ok(b)
}

fn laws(lax: bool) -> ModuleLaws {
    if lax {
        ModuleLaws::Lax
    } else {
        ModuleLaws::Strict
    }
}

fn read(path: &PathBuf, inputs: &mut Vec<InputDigest>) -> Result<String, CliError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{shown}: {e}")))?;
    inputs.push(InputDigest::of(&shown, &bytes));
    String::from_utf8(bytes).map_err(|_| CliError::Parse(format!("{shown} is not UTF-8")))
}

fn run(command: &Command, inputs: &mut Vec<InputDigest>, b: Result<Budget, CliError>) -> Result<Outcome, CliError> {
    let budget = b?;
    match command {
        Command::Validate { file, kind, lax_modules } => {
            let doc = document::ingest(&read(file, inputs)?)?;
            commands::validate(&doc, *kind, &Settings { budget, laws: laws(*lax_modules) })
        }
        Command::Check { file, theorem, lax_modules, subject, generators, .. } => {
            let doc = document::ingest(&read(file, inputs)?)?;
            let args = CheckArgs { theorem: *theorem, subject: subject.as_deref(), generators: generators.as_deref() };
            commands::check(&doc, &args, &Settings { budget, laws: laws(*lax_modules) })
        }
        Command::Enumerate { kind, max_size, out, .. } => enumerate::enumerate(*kind, *max_size, out, &budget),
        Command::Recheck { certificate } => commands::recheck_text(&read(certificate, inputs)?),
        Command::Corpus { action: CorpusAction::List } => commands::corpus_list(),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).filter(|a| a != "--json").collect();
    let seed = match &cli.command {
        Command::Check { seed, .. } | Command::Enumerate { seed, .. } => *seed,
        _ => None,
    };
    let b = budget(seed);
    let mut report = Report::new(echo, Vec::new(), &b.clone().unwrap_or_default());
    let mut inputs = Vec::new();
    let result = run(&cli.command, &mut inputs, b);
    report.inputs = inputs;
    let report = report.finish(result);
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text(start.elapsed()));
    }
    ExitCode::from(report.exit_code)
}
