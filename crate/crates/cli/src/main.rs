//! `dball`: command-line experiments for Dirichlet-type spaces on the unit
//! ball of C^2.
//!
//! Every run writes its result together with a provenance block (tool
//! version, replayable arguments, thread count, inputs). `--verify FILE`
//! replays that block and compares the regenerated file byte for byte.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical failure.

mod args;
mod commands;
mod error;
mod input;
mod output;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{replayable_argv, Cli, Command};
use error::CliError;
use output::{provenance, read_provenance, render};

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(job()),
        Some(0) => Err(CliError::Input("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Input(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Runs a command and renders the full output file.
fn produce(command: &Command, argv: &[String], threads: Option<usize>) -> Result<(String, output::Artifact), CliError> {
    let artifact = with_threads(threads, || commands::run(command))??;
    let prov = provenance(command.name(), argv, threads, &artifact.inputs);
    let text = render(&prov, &artifact.body)?;
    Ok((text, artifact))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verify(path: &Path, threads_override: Option<usize>) -> Result<(), CliError> {
    let stored = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let prov = read_provenance(&stored)?;
    let argv: Vec<String> = prov["argv"]
        .as_array()
        .ok_or_else(|| CliError::Input("provenance has no argv".into()))?
        .iter()
        .map(|v| v.as_str().unwrap_or_default().to_string())
        .collect();
    let threads = threads_override.or(prov["threads"].as_u64().map(|t| t as usize));
    let replay = Cli::try_parse_from(std::iter::once("dball".to_string()).chain(argv.iter().cloned()))
        .map_err(|e| CliError::Input(format!("recorded arguments no longer parse: {e}")))?;
    let command = replay.command.ok_or_else(|| CliError::Input("recorded arguments name no command".into()))?;
    // Render with the recorded thread count so the provenance block matches.
    let recorded_threads = prov["threads"].as_u64().map(|t| t as usize);
    let artifact = with_threads(threads, || commands::run(&command))??;
    let text = render(&provenance(command.name(), &argv, recorded_threads, &artifact.inputs), &artifact.body)?;
    if text == stored {
        println!("verified: {} reproduced byte for byte", path.display());
        Ok(())
    } else {
        let line = text.lines().zip(stored.lines()).position(|(a, b)| a != b).map(|i| i + 1);
        Err(CliError::Numerical(match line {
            Some(l) => format!("{}: reproduction differs at line {l}", path.display()),
            None => format!("{}: reproduction differs in length", path.display()),
        }))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(path) = &cli.verify {
        if cli.command.is_some() {
            return Err(CliError::Input("--verify takes no command; it replays the one recorded in the file".into()));
        }
        return verify(path, cli.threads);
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Input("no command given; see --help".into()));
    };
    let raw: Vec<String> = std::env::args().skip(1).collect();
    let argv = replayable_argv(&raw);
    let (text, artifact) = produce(command, &argv, cli.threads)?;
    emit(&text, cli.out.as_deref())?;
    for w in &artifact.warnings {
        eprintln!("warning: {w}");
    }
    match artifact.failure {
        Some(msg) => Err(CliError::Numerical(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
