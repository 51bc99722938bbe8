mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Output};

/// A command line that parsed but does not make sense.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// What a command produced, before it is written out.
pub struct Outcome {
    pub method: String,
    pub inputs: serde_json::Value,
    pub result: serde_json::Value,
    pub plain: String,
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let (outcome, output) = match commands::run(cli.command) {
        Ok(done) => done,
        Err(e) => {
            eprintln!("error: {e:#}");
            return if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            };
        }
    };
    let text = match output {
        Output::Plain => outcome.plain,
        Output::Json => {
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let doc = serde_json::json!({
                "method": outcome.method,
                "inputs": outcome.inputs,
                "result": outcome.result,
                "elapsed_ms": elapsed_ms,
            });
            format!("{doc}\n")
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
