use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use grpd_cli::{load, run, Command, Selection};

/// Translation groupoids of finite groups acting on graphs.
///
/// Exit status: 0 on success, 1 when a checked property fails, 2 on bad input.
#[derive(Parser, Debug)]
#[command(name = "grpd", version)]
struct Args {
    command: Command,
    /// Instance file (JSON). Optional only for `report-all`.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Grid size T; defaults to the instance's own.
    #[arg(long)]
    grid: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// A named G-path; repeat for commands taking two.
    #[arg(long = "path")]
    paths: Vec<String>,
    /// A named map (`id` is the identity); repeat for commands taking two.
    #[arg(long = "map")]
    maps: Vec<String>,
    /// A named basepoint; repeat for `based` with two.
    #[arg(long = "basepoint")]
    basepoints: Vec<String>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let instance = match args.instance.as_deref().map(load).transpose() {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let sel = Selection { paths: args.paths, maps: args.maps, basepoints: args.basepoints };
    let report = match run(args.command, instance.as_ref(), args.grid, &sel) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    match &args.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &json) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
