mod args;
mod commands;
mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use commands::Output;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn fail(kind: &str, message: &str) -> ExitCode {
    let body = json!({ "error": kind, "message": message });
    eprintln!(
        "{}",
        serde_json::to_string(&body).expect("JSON values always serialize")
    );
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::DagEquiv { dag } = &cli.command {
        if dag.len() != 2 {
            Cli::command()
                .error(
                    clap::error::ErrorKind::WrongNumberOfValues,
                    format!(
                        "dag-equiv takes exactly two --dag arguments, got {}",
                        dag.len()
                    ),
                )
                .exit();
        }
    }
    let format = cli.format;
    let output = match commands::run(cli.command) {
        Ok(o) => o,
        Err(e) => return fail(e.kind(), &e.to_string()),
    };
    let mut stdout = std::io::stdout().lock();
    let text = match output {
        Output::Doc(v) => match format {
            Format::Json => pretty(&v),
            Format::Table => render::render(&v),
        },
        Output::Stream { key, items } => items
            .iter()
            .map(|v| match format {
                Format::Json => {
                    serde_json::to_string(v).expect("JSON values always serialize") + "\n"
                }
                Format::Table => render::render_item(key, v) + "\n",
            })
            .collect(),
        Output::Nothing => String::new(),
        Output::Oracle(outcomes) => {
            let text = match format {
                Format::Table => outcomes.iter().map(|o| o.line() + "\n").collect(),
                Format::Json => pretty(&Value::Array(
                    outcomes
                        .iter()
                        .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail }))
                        .collect(),
                )),
            };
            let failed: Vec<String> = outcomes
                .iter()
                .filter(|o| !o.passed)
                .map(|o| o.id.to_string())
                .collect();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if !failed.is_empty() {
                return fail(
                    "AcceptanceFailure",
                    &format!("criteria failed: {}", failed.join(", ")),
                );
            }
            return ExitCode::SUCCESS;
        }
    };
    match stdout.write_all(text.as_bytes()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail("Io", &e.to_string()),
    }
}
