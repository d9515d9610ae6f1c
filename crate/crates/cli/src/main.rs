use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use verlinde_core::batch::{emit_report, parse_request, run_request, Format};

/// Dimensions of twisted conformal blocks from a JSON request.
#[derive(Parser, Debug)]
#[command(name = "verlinde", version)]
struct Args {
    /// Request file, or `-` for stdin.
    request: PathBuf,
    /// Output format; overrides the request's own option.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Worker threads for the point sums.
    #[arg(long)]
    threads: Option<usize>,
    /// Largest accepted distance from an integer.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Table,
    Structured,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Table => Format::Table,
            OutputFormat::Structured => Format::Structured,
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Exit 0 iff every row is within tolerance and no crosscheck disagreed.
fn run(args: Args) -> Result<bool> {
    let text = read_input(&args.request)?;
    let mut req = parse_request(&text)?;
    if let Some(t) = args.threads {
        anyhow::ensure!(t > 0, "--threads must be positive");
        req.options.threads = Some(t);
    }
    if let Some(t) = args.tolerance {
        anyhow::ensure!(t > 0.0, "--tolerance must be positive");
        req.options.tolerance = Some(t);
    }
    let format = args
        .format
        .map(Format::from)
        .or(req.options.format)
        .unwrap_or(Format::Table);
    let report = run_request(&req)?;
    print!("{}", emit_report(&report, format));
    for d in &report.diagnostics {
        eprintln!("{d}");
    }
    Ok(report.is_success())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
