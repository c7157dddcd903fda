use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use relcat::commands::{self, CliError, CliResult, VerifyArgs, VerifyMode};
use relcat::format::{parse_file, RelationFile};
use relcat_core::ClassSpec;

/// Relations between finite sets of nonzero non-units, as a category.
#[derive(Parser)]
#[command(name = "relcat", version)]
struct Cli {
    /// Accept the units 1 and -1 as labels.
    #[arg(long, global = true)]
    no_strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Axioms,
    Necessary,
}

#[derive(Subcommand)]
enum Command {
    /// Structural and categorical verdicts for one relation.
    Classify {
        file: PathBuf,
        name: String,
        /// Probe one extra middle size in the extremal-epi search.
        #[arg(long)]
        paranoid: bool,
    },
    /// Print the relation block of `outer ∘ inner`.
    Compose {
        file: PathBuf,
        outer: String,
        inner: String,
    },
    /// List the factorizations of a relation up to relabeling of the middle.
    Factor {
        file: PathBuf,
        name: String,
        #[arg(long, default_value_t = 2)]
        mid_max: usize,
        #[arg(long, default_value = "all")]
        e_class: String,
        #[arg(long, default_value = "all")]
        m_class: String,
    },
    /// Check factorization-structure axioms or necessary properties on a
    /// bounded universe.
    VerifyEm {
        /// Comma-separated labels; may be empty.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        pool: String,
        #[arg(long, default_value_t = 2)]
        size_max: usize,
        #[arg(long, default_value_t = 2)]
        arity_max: usize,
        #[arg(long, default_value = "all")]
        e_class: String,
        #[arg(long, default_value = "all")]
        m_class: String,
        #[arg(long, value_enum, default_value_t = Mode::Necessary)]
        mode: Mode,
        #[arg(long)]
        allow_large: bool,
    },
    /// Compare the fast mono/epi tests with the power-set oracles.
    Oracle { file: PathBuf, name: String },
}

fn load(path: &PathBuf, strict: bool) -> Result<RelationFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut file = parse_file(&text, strict).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    file.source = Some(path.clone());
    Ok(file)
}

fn class(s: &str) -> Result<ClassSpec, CliError> {
    Ok(s.parse::<ClassSpec>()?)
}

fn run(cli: Cli) -> CliResult {
    let strict = !cli.no_strict;
    match cli.command {
        Command::Classify {
            file,
            name,
            paranoid,
        } => commands::cmd_classify(&load(&file, strict)?, &name, paranoid),
        Command::Compose { file, outer, inner } => {
            commands::cmd_compose(&load(&file, strict)?, &outer, &inner)
        }
        Command::Factor {
            file,
            name,
            mid_max,
            e_class,
            m_class,
        } => {
            let (e, m) = (class(&e_class)?, class(&m_class)?);
            let budget = commands::budget_from_env()?;
            commands::cmd_factor(&load(&file, strict)?, &name, mid_max, &e, &m, &budget)
        }
        Command::VerifyEm {
            pool,
            size_max,
            arity_max,
            e_class,
            m_class,
            mode,
            allow_large,
        } => {
            let args = VerifyArgs {
                pool: commands::parse_pool(&pool)?,
                size_max,
                arity_max,
                e_class: class(&e_class)?,
                m_class: class(&m_class)?,
                mode: match mode {
                    Mode::Axioms => VerifyMode::Axioms,
                    Mode::Necessary => VerifyMode::Necessary,
                },
                allow_large,
                strict,
            };
            commands::cmd_verify_em(&args, &commands::budget_from_env()?)
        }
        Command::Oracle { file, name } => commands::cmd_oracle(&load(&file, strict)?, &name),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                commands::EXIT_USAGE
            } else {
                commands::EXIT_OK
            });
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("relcat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
