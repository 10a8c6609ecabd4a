//! `padovan`: replay traces, generate workloads and collect step statistics.
//!
//! Exit status: 0 on success, 1 when an audit or differential check fails,
//! 2 on usage, input or I/O errors.

use std::fs::{self, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use padovan_core::runner::{run, Impl, RunOptions, Stats};
use padovan_core::trace::Trace;
use padovan_core::workload::{generate, Mode};

#[derive(Parser)]
#[command(name = "padovan", version, about = "Padovan heap trace runner and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a trace file and print one line per find-min or delete-min.
    Run {
        file: PathBuf,
        /// padovan, fibonacci or oracle.
        #[arg(long = "impl", default_value = "padovan")]
        implementation: Impl,
        /// Check every invariant after each operation and stop at the first failure.
        #[arg(long)]
        audit: bool,
        /// Run all three implementations in lockstep and compare their output.
        #[arg(long)]
        differential: bool,
        /// Write a statistics CSV (header and one row).
        #[arg(long, value_name = "CSV")]
        stats: Option<PathBuf>,
        /// Write the final forest as Graphviz DOT.
        #[arg(long, value_name = "DOT")]
        dot: Option<PathBuf>,
    },
    /// Generate a workload trace.
    Gen {
        /// random, ascending or competition.
        #[arg(long)]
        mode: Mode,
        /// Operations (random), inserts (ascending) or rounds (competition).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a workload, run it and append a statistics row to a CSV file.
    Bench {
        #[arg(long = "impl")]
        implementation: Impl,
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV file; the header is written when the file is new or empty.
        #[arg(long)]
        csv: PathBuf,
    },
}

enum Failure {
    Check(String),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(message)) => {
            eprintln!("check failed: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run {
            file,
            implementation,
            audit,
            differential,
            stats,
            dot,
        } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let trace = Trace::parse(&text).with_context(|| format!("parsing {}", file.display()))?;
            let options = RunOptions {
                audit,
                differential,
                ..RunOptions::default()
            };
            let result = run(&trace, implementation, &options);
            print_lines(&result.lines)?;
            if let Some(path) = stats {
                let body = format!("{}\n{}\n", Stats::HEADER, result.stats.csv_row());
                fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = dot {
                let graph = result.dot.as_deref().unwrap_or("digraph oracle {\n}\n");
                fs::write(&path, graph).with_context(|| format!("writing {}", path.display()))?;
            }
            match result.failure {
                Some(message) => Err(Failure::Check(message)),
                None => Ok(()),
            }
        }
        Command::Gen { mode, n, seed, output } => {
            let text = generate(mode, n, seed).to_text();
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => write_stdout(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Bench {
            implementation,
            mode,
            n,
            seed,
            csv,
        } => {
            let trace = generate(mode, n, seed);
            let options = RunOptions {
                mode: Some(mode.to_string()),
                n: Some(n),
                ..RunOptions::default()
            };
            let result = run(&trace, implementation, &options);
            let row = result.stats.csv_row();
            append_row(&csv, &row)?;
            write_stdout(format!("{row}\n").as_bytes())?;
            Ok(())
        }
    }
}

fn print_lines(lines: &[String]) -> Result<()> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for line in lines {
        writeln!(out, "{line}").context("writing output")?;
    }
    out.flush().context("writing output")
}

fn write_stdout(bytes: &[u8]) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(bytes).and_then(|()| out.flush()).context("writing output")
}

fn append_row(path: &Path, row: &str) -> Result<()> {
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let empty = file.metadata().map(|m| m.len() == 0).unwrap_or(true);
    let mut body = String::new();
    if empty {
        body.push_str(Stats::HEADER);
        body.push('\n');
    }
    body.push_str(row);
    body.push('\n');
    file.write_all(body.as_bytes())
        .with_context(|| format!("writing {}", path.display()))
}
