use std::process::ExitCode;

use cdmatroid_cli::audit::{AuditConfig, Auditor, Oracles};
use cdmatroid_cli::commands::{self, CliError};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cdmatroid", version, about = "Circuit-difference analysis of binary matroids")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure, circuits and every predicate with witnesses.
    Analyze { input: String },
    /// All circuits, one per line.
    Circuits { input: String },
    /// Structural recognition of a regular matroid.
    Recognize { input: String },
    /// Run the audit suite.
    Audit {
        #[arg(long, default_value_t = AuditConfig::default().max_elements)]
        max_elements: usize,
        #[arg(long, default_value_t = AuditConfig::default().seed)]
        seed: u64,
        /// Run a single audit (e.g. 1.2, 4.6, zoo).
        #[arg(long)]
        lemma: Option<String>,
    },
    /// List the excluded series minors coming from one rank of the family.
    Exminors {
        #[arg(long)]
        rank: usize,
    },
    /// Counts of connected binary matroids by size.
    Census {
        #[arg(long)]
        elements: usize,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("MATROID_CD_THREADS") else { return Ok(()) };
    let n: usize = value
        .parse()
        .map_err(|_| CliError::Usage(format!("MATROID_CD_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    configure_threads()?;
    let json = cli.json;
    let output = match cli.command {
        Command::Analyze { input } => commands::analyze(&input, json)?,
        Command::Circuits { input } => commands::circuits(&input, json)?,
        Command::Recognize { input } => commands::recognize(&input, json)?,
        Command::Audit { max_elements, seed, lemma } => {
            let config = AuditConfig { max_elements, seed, lemma, ..AuditConfig::default() };
            let results = Auditor::new(config, Oracles::default()).run()?;
            print!("{}", commands::render_audit(&results, json)?);
            return Ok(commands::audit_status(&results));
        }
        Command::Exminors { rank } => commands::exminors(rank, json)?,
        Command::Census { elements } => commands::census(elements, json)?,
    };
    print!("{output}");
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
