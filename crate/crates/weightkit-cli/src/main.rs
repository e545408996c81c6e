//! `weightkit <verb> --in <file> [--out <file>] [--level N] [--seed S]`
//!
//! One self-contained input document per invocation; the report is written
//! as JSON to `--out` (or stdout) with a short summary on stderr. Exit
//! codes: 0 = every check passed, 1 = some check failed, 2 = input error.

mod doc;
mod report;
mod run;

use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "weightkit",
    version,
    about = "Exact verification engine for weight truncations, contramodules, and localized hearts",
    after_help = format!("VERBS:\n    {}", run::VERBS.join(", "))
)]
struct Cli {
    /// Operation to run; must match the command verb in the input document
    verb: String,

    /// Input document (JSON); for check-certificate, a previously emitted report
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,

    /// Where to write the report (stdout when absent)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Truncation level for completed-module reductions and tower windows
    #[arg(long, default_value_t = 6)]
    level: u32,

    /// Seed for the randomized batteries
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_cli(&cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn run_cli(cli: &Cli) -> Result<bool, doc::DocError> {
    if !run::VERBS.contains(&cli.verb.as_str()) {
        return Err(doc::DocError::Semantic(format!(
            "unknown verb {:?}; expected one of {}",
            cli.verb,
            run::VERBS.join(", ")
        )));
    }
    let text = std::fs::read_to_string(&cli.input).map_err(|e| {
        doc::DocError::Semantic(format!("cannot read {}: {e}", cli.input.display()))
    })?;

    let report = if cli.verb == "check-certificate" {
        let previous: report::Report = serde_json::from_str(&text)
            .map_err(|e| doc::DocError::Syntax(e.to_string()))?;
        run::check_certificates(&previous)?
    } else {
        let document = doc::parse_document(&text)?;
        let seed = cli.seed.unwrap_or(weightkit::verify::BatteryConfig::default().seed);
        run::execute(&document, &cli.verb, cli.level, seed)?
    };

    eprintln!("{}", report.render_summary());
    let rendered = serde_json::to_string_pretty(&report)
        .map_err(|e| doc::DocError::Semantic(e.to_string()))?;
    match &cli.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| {
            doc::DocError::Semantic(format!("cannot write {}: {e}", path.display()))
        })?,
        None => println!("{rendered}"),
    }
    Ok(report.all_passed)
}
