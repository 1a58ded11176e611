mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Map, Value};

use args::{Cli, Format};

fn fail(code: u8, reason: &str) -> ExitCode {
    eprintln!("error: {reason}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let text = e.to_string();
                    let line = text.lines().next().unwrap_or("invalid arguments");
                    fail(2, line.trim_start_matches("error: "))
                }
            };
        }
    };
    let g = &cli.global;
    if g.threads == 0 {
        return fail(2, "--threads must be >= 1");
    }

    let start = Instant::now();
    let report = match commands::run(&cli.command, g) {
        Ok(r) => r,
        Err(e) => return fail(if e.is_budget() { 3 } else { 2 }, &e.to_string()),
    };
    let elapsed = start.elapsed().as_millis() as u64;

    let mut meta = Map::new();
    meta.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta.insert(
        "run_config".into(),
        json!({
            "subcommand": cli.command.name(),
            "parameters": serde_json::to_value(&cli.command).expect("serializable arguments"),
            "output_format": g.format,
            "output_path": g.output,
            "precision_bits": g.precision_bits,
            "seed": g.seed,
            "threads": g.threads,
        }),
    );
    meta.insert("wall_time_ms".into(), if g.no_timing { Value::Null } else { json!(elapsed) });

    let text = match g.format {
        Format::Json => output::render_json(meta, report),
        Format::Csv => match output::render_csv(meta, report) {
            Ok(t) => t,
            Err(e) => return fail(2, &e),
        },
    };
    match &g.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return fail(2, &format!("cannot write {path}: {e}"));
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return fail(2, &format!("cannot write output: {e}"));
                }
            }
        }
    }
    ExitCode::SUCCESS
}
