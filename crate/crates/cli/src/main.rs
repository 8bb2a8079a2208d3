mod args;
mod commands;
mod parallel;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use serde_json::json;

use args::{Cli, Format};
use commands::Report;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] flagsys::Error),
}

fn seed() -> Result<u64, CliError> {
    match std::env::var("FLAG_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("FLAG_SEED must be an unsigned integer, got `{s}`"))),
        Err(_) => Ok(flagsys::sample::DEFAULT_SEED),
    }
}

fn verb_list() -> String {
    let cmd = Cli::command();
    let names: Vec<&str> = cmd.get_subcommands().map(|c| c.get_name()).filter(|n| *n != "help").collect();
    format!("verbs: {}", names.join(", "))
}

fn render(report: Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(report.text),
        Format::Dot => report.dot.ok_or_else(|| CliError::Usage(format!("`{}` has no dot output", report.verb))),
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "tool": "flag",
                "version": env!("CARGO_PKG_VERSION"),
                "verb": report.verb,
                "code": report.code,
                "result": report.result,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n")
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            if matches!(e.kind(), ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand)
            {
                eprintln!("{}", verb_list());
            }
            return ExitCode::from(2);
        }
    };
    let out = seed().and_then(|s| commands::run(&cli, s)).and_then(|r| render(r, cli.format));
    match out {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}\n{}", verb_list());
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
