use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use fprlab_cli::bench::{format_summary, run_bench, summarize, write_csv, BenchConfig, Suite};
use fprlab_cli::commands::{cmd_autocorr, cmd_decide, cmd_enumerate, cmd_solve, format_decision, format_enumeration, Globals};
use fprlab_cli::{init_thread_pool, Instance};
use fprlab_core::{Complex64, SolverKind};

#[derive(Parser, Debug)]
#[command(name = "fprlab", version, about = "Fourier phase retrieval laboratory")]
struct Cli {
    /// Tolerance for the spectrum residue check and anchor feasibility.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Grid size M = grid_mult * N for sampled intensities.
    #[arg(long, global = true, default_value_t = 4)]
    grid_mult: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the autocorrelation of a signal and its intensity as CSV.
    Autocorr {
        input: PathBuf,
        /// Number of grid angles in the CSV.
        #[arg(long, default_value_t = 256)]
        points: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every root selection and mark the anchor-consistent ones.
    Enumerate {
        input: PathBuf,
        /// Anchor x(0) as "re,im" or "re".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        anchor: Option<Complex64>,
    },
    /// Run one solver and print the result row as JSON.
    Solve {
        input: PathBuf,
        #[arg(long, default_value = "oracle")]
        solver: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        iters: Option<usize>,
    },
    /// Decide a Product Partition instance through phase retrieval.
    /// Exit status 0: has a solution, 1: no solution, 2: error.
    Decide {
        input: PathBuf,
        #[arg(long, default_value = "oracle")]
        solver: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixed per-round iteration budget instead of the default.
        #[arg(long)]
        iters: Option<usize>,
    },
    /// Run seeded solver trials and emit CSV plus a summary.
    Bench {
        #[arg(long, default_value = "random")]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Comma-separated solver names.
        #[arg(long, default_value = "er,hio,wf,oracle")]
        solvers: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        iters: Option<usize>,
        /// Write the CSV here; the summary then goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add a wall_ms column (makes the CSV nondeterministic).
        #[arg(long)]
        timing: bool,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err("expected \"re\" or \"re,im\"".into()),
    }
}

fn parse_solvers(list: &str) -> Result<Vec<SolverKind>> {
    list.split(',').filter(|s| !s.is_empty()).map(|s| Ok(s.trim().parse::<SolverKind>()?)).collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = Globals { tol: cli.tol, grid_mult: cli.grid_mult };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Autocorr { input, points, out: csv_path } => {
            let inst = Instance::load(&input)?;
            let (lags, csv) = cmd_autocorr(&inst, points, &g)?;
            out.write_all(lags.as_bytes())?;
            match csv_path {
                Some(path) => std::fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
                None => {
                    writeln!(out)?;
                    out.write_all(csv.as_bytes())?;
                }
            }
        }
        Command::Enumerate { input, anchor } => {
            let inst = Instance::load(&input)?;
            let rows = cmd_enumerate(&inst, anchor, &g)?;
            out.write_all(format_enumeration(&rows).as_bytes())?;
        }
        Command::Solve { input, solver, seed, iters } => {
            let solver: SolverKind = solver.parse()?;
            let inst = Instance::load(&input)?;
            let row = cmd_solve(&inst, solver, seed, iters, &g)?;
            serde_json::to_writer(&mut out, &row)?;
            writeln!(out)?;
        }
        Command::Decide { input, solver, seed, iters } => {
            let solver: SolverKind = solver.parse()?;
            let inst = Instance::load(&input)?;
            let decision = cmd_decide(&inst, solver, seed, iters, &g)?;
            out.write_all(format_decision(&decision).as_bytes())?;
            return Ok(if decision.has_solution() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Bench { suite, n, trials, solvers, seed, iters, out: csv_path, timing } => {
            let solvers = parse_solvers(&solvers)?;
            let cfg = BenchConfig { suite, n, trials, solvers, seed, iters, grid_mult: g.grid_mult, timing };
            let rows = run_bench(&cfg)?;
            let summary = format_summary(suite, n, &summarize(&rows, &cfg.solvers));
            match csv_path {
                Some(path) => {
                    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    write_csv(&rows, timing, BufWriter::new(file))?;
                    out.write_all(summary.as_bytes())?;
                }
                None => {
                    write_csv(&rows, timing, &mut out)?;
                    eprint!("{summary}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
