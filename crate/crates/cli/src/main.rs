use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use incidence::builtins::NAMES;
use incidence::exactlin::RankMode;
use incidence::QdualMode;
use incidence_cli::commands::{self, Options};
use incidence_cli::report::{self, Report};
use incidence_cli::{load, CliError};

#[derive(Parser)]
#[command(name = "incidence", version, about = "Incidence deformation complexes of algebra laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Model of Q∨: the ambient identity space or the span of Θ.
    #[arg(long, global = true)]
    qdual_mode: Option<QdualMode>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Run the full 18-dimensional Richardson pipeline.
    #[arg(long, global = true)]
    slow: bool,
    /// Include bases of H¹ and H³.
    #[arg(long, global = true)]
    bases: bool,
    /// Add wall-clock timing to reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Modular,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions and bases of H¹, H², H³ with the Euler check.
    Cohomology { input: String },
    /// The quadratic obstruction κ₂ and a well-definedness check.
    Obstruction { input: String },
    /// Anisotropy verdict of κ₂ with its evidence.
    Anisotropy { input: String },
    /// The Gram trace form and its radical.
    Gram { input: String },
    /// Second-order lift of a first-order deformation.
    Lift {
        input: String,
        /// JSON list of {i, j, k, c} law entries; defaults to the first H² class.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Torus characters and the graded Euler identity.
    Characters { input: String },
    /// The sl₂ ⋉ V_2n example.
    Richardson {
        #[arg(default_value_t = 7)]
        n: usize,
    },
    /// Print a builtin algebra in the input format.
    Builtin {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let opts = Options {
        qdual_mode: cli.qdual_mode,
        rank_mode: match cli.mode {
            Mode::Exact => RankMode::Exact,
            Mode::Modular => RankMode::Modular { seed: cli.seed },
        },
        seed: cli.seed,
        trials: cli.trials,
        slow: cli.slow,
        bases: cli.bases,
        timing: cli.timing,
    };
    let report: Report = match &cli.command {
        Command::Cohomology { input } => commands::cmd_cohomology(&load(input)?, &opts)?,
        Command::Obstruction { input } => commands::cmd_obstruction(&load(input)?, &opts)?,
        Command::Anisotropy { input } => commands::cmd_anisotropy(&load(input)?, &opts)?,
        Command::Gram { input } => commands::cmd_gram(&load(input)?, &opts)?,
        Command::Lift { input, alpha } => {
            let alpha = alpha.as_deref().map(commands::parse_alpha).transpose()?;
            commands::cmd_lift(&load(input)?, alpha.as_deref(), &opts)?
        }
        Command::Characters { input } => commands::cmd_characters(&load(input)?, &opts)?,
        Command::Richardson { n } => commands::cmd_richardson(*n, &opts)?,
        Command::Builtin { list: true, .. } => return Ok(NAMES.join("\n") + "\n"),
        Command::Builtin { name: Some(name), .. } => return Ok(commands::cmd_builtin(name)?.to_json() + "\n"),
        Command::Builtin { name: None, .. } => {
            return Err(CliError::Schema("builtin needs a name or --list".into()))
        }
    };
    Ok(match cli.format {
        Format::Text => report::to_text(&report),
        Format::Json => report::to_json(&report) + "\n",
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
