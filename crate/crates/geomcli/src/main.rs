use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geomcli::{export_mesh, export_samples, run_report, run_verify, RunConfig};

#[derive(Parser)]
#[command(
    name = "geomcli",
    version,
    about = "C-ruled surfaces: reports, meshes, samples and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write report.json.
    Report(RunConfig),
    /// Write surface.obj (and striction.obj with --striction).
    Mesh(RunConfig),
    /// Write samples.csv.
    Samples(RunConfig),
    /// Write verification.json; exit 1 if any gold check fails.
    Verify(RunConfig),
}

fn run(command: Command) -> geomcli::CliResult<u8> {
    match command {
        Command::Report(c) => {
            let (path, report) = run_report(&c)?;
            println!(
                "{} ({}, {} rows)",
                path.display(),
                report.class.kind,
                report.table.len()
            );
        }
        Command::Mesh(c) => {
            let files = export_mesh(&c)?;
            println!("{}", files.surface.display());
            if let Some(p) = files.striction {
                println!("{}", p.display());
            }
        }
        Command::Samples(c) => println!("{}", export_samples(&c)?.display()),
        Command::Verify(c) => {
            let (path, doc) = run_verify(&c)?;
            let s = doc.summary;
            println!(
                "{}: {} pass, {} fail, {} warn, {} skipped",
                path.display(),
                s.pass,
                s.fail,
                s.warn,
                s.skipped
            );
            return Ok(s.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
