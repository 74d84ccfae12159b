//! Command-line front end: definition files, check suites, constructions
//! and reports.

pub mod construct;
pub mod definition;
pub mod error;
pub mod suite;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub use construct::{construct, Construction};
pub use definition::{parse_definition, parse_file, Definition, DefinitionFile, DomainObject};
pub use error::CliError;
pub use suite::{run_suite, CheckResult, Suite, SuiteOptions, SuiteResult, SCHEMA};

#[derive(Debug, Parser)]
#[command(name = "filippov-lab", version, about = "Exact verifier for 3-Lie algebras and 3-Lie 2-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a check suite on a definition file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the JSON report here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Random cochains per degree in cocycle checks.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Highest arity of induced-bracket relations to check (1 to 4).
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=4))]
        max_arity: u8,
    },
    /// Build a new definition file from an existing one.
    Construct {
        #[arg(value_enum)]
        kind: Construction,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Render a saved JSON report.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn render(result: &SuiteResult, format: Format) -> String {
    match format {
        Format::Text => result.to_string(),
        Format::Json => result.to_json(),
    }
}

/// Runs one command, writing its output to `out`; returns the exit code.
pub fn execute(command: &Command, out: &mut impl Write) -> Result<i32, CliError> {
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
    };
    match command {
        Command::Verify {
            file,
            suite,
            format,
            output,
            trials,
            seed,
            max_arity,
        } => {
            let def = parse_definition(&read(file)?)?;
            let opts = SuiteOptions {
                suite: *suite,
                trials: *trials,
                seed: *seed,
                max_arity: usize::from(*max_arity),
            };
            let result = run_suite(&def, &opts)?;
            if let Some(path) = output {
                write(path, &result.to_json())?;
            }
            emit(out, &render(&result, *format))?;
            Ok(result.exit_code())
        }
        Command::Construct { kind, file, output } => {
            let def = parse_definition(&read(file)?)?;
            let built = construct(*kind, &def)?;
            write(output, &built.to_json())?;
            emit(out, &format!("wrote {} ({}) to {}\n", built.name, built.kind(), output.display()))?;
            Ok(0)
        }
        Command::Report { file, format } => {
            let result = SuiteResult::from_json(&read(file)?)?;
            emit(out, &render(&result, *format))?;
            Ok(result.exit_code())
        }
    }
}

/// Entry point for the binary: prints errors to stderr and maps them to
/// exit codes.
pub fn run(cli: Cli) -> i32 {
    let stdout = std::io::stdout();
    match execute(&cli.command, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Rejected { report, .. } = &e {
                if !report.passed() {
                    eprint!("{report}");
                }
            }
            e.exit_code()
        }
    }
}
