//! `pearcey`: evaluate the Pearcey integral `P(x, y) = ∫₀^∞ e^{−t⁴−xt²} cos(yt) dt`.
//!
//! Exit status: 0 success, 1 evaluation or row failure, 2 method not valid at
//! the point, 3 unparsable arguments or input.

mod batch;
mod eval;
mod format;
mod literal;
mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use pearcey::tables::{reproduce_row, TableId, TableReport};
use pearcey::{OracleConfig, SelectorPolicy};
use rayon::prelude::*;

use eval::Method;
use literal::parse_complex;
use sweep::GridSpec;

#[derive(Parser)]
#[command(name = "pearcey", version, about = "Evaluate the Pearcey integral P(x, y) for complex x and y")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolicyArgs {
    /// Target relative tolerance for automatic selection.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

impl PolicyArgs {
    fn policy(&self) -> Result<SelectorPolicy, String> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(format!("--tol must be positive, got {}", self.tol));
        }
        Ok(SelectorPolicy::with_tolerance(self.tol))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate at one point.
    Eval {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        x: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        y: Complex64,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Number of terms (requires an explicit series method).
        #[arg(long)]
        terms: Option<usize>,
        #[command(flatten)]
        policy: PolicyArgs,
        /// Print a JSON object with full-precision numbers.
        #[arg(long)]
        json: bool,
        /// Significant digits in text output.
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Evaluate every record of a CSV (header x,y[,method,terms]) or JSON-lines file.
    Batch {
        input: PathBuf,
        /// Output CSV; standard output when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Recompute a relative-error table against the quadrature oracle.
    Table {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=3))]
        which: u32,
        /// Oracle precision in decimal digits.
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
    /// Evaluate over a grid of x and y values (MIN:MAX:COUNT[@AMIN:AMAX:ACOUNT]).
    Sweep {
        #[arg(long)]
        x_grid: GridSpec,
        #[arg(long)]
        y_grid: GridSpec,
        /// Add the relative error against the quadrature oracle.
        #[arg(long)]
        with_oracle: bool,
        #[arg(long, default_value_t = 30)]
        oracle_digits: u32,
        /// Output CSV; standard output when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        policy: PolicyArgs,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Eval {
            x,
            y,
            method,
            terms,
            policy,
            json,
            digits,
        } => {
            let policy = match policy.policy() {
                Ok(p) => p,
                Err(e) => return usage(e),
            };
            if terms.is_some() && method == Method::Auto {
                return usage("--terms needs an explicit --method");
            }
            match eval::run(x, y, method, terms, &policy) {
                Ok(r) => {
                    if json {
                        println!("{}", eval::to_json(x, y, &r));
                    } else {
                        println!("{}", eval::to_text(x, y, &r, digits));
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(eval::exit_code(&e))
                }
            }
        }
        Command::Batch { input, out, policy } => {
            let policy = match policy.policy() {
                Ok(p) => p,
                Err(e) => return usage(e),
            };
            let text = match std::fs::read_to_string(&input) {
                Ok(t) => t,
                Err(e) => return usage(format!("cannot read {}: {e}", input.display())),
            };
            let records = match batch::parse_input(&text) {
                Ok(r) => r,
                Err(e) => return usage(format!("{}: {e}", input.display())),
            };
            let sink = match output(&out) {
                Ok(w) => w,
                Err(e) => return usage(format!("cannot write output: {e}")),
            };
            match batch::process(&records, &policy, sink) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => {
                    eprintln!("error: some rows failed; see the error column");
                    ExitCode::from(1)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Table { which, digits } => {
            let table = TableId::from_number(which).expect("range checked by the parser");
            let cfg = OracleConfig::with_digits(digits);
            let rows: Result<Vec<_>, _> = table
                .points()
                .par_iter()
                .map(|p| reproduce_row(table, p, &cfg))
                .collect();
            match rows {
                Ok(rows) => {
                    let report = TableReport { table, digits, rows };
                    print!("{report}");
                    let failed = report.failures().count();
                    println!("{} of {} cells PASS", 6 * report.rows.len() - failed, 6 * report.rows.len());
                    if report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Sweep {
            x_grid,
            y_grid,
            with_oracle,
            oracle_digits,
            out,
            policy,
        } => {
            let policy = match policy.policy() {
                Ok(p) => p,
                Err(e) => return usage(e),
            };
            let sink = match output(&out) {
                Ok(w) => w,
                Err(e) => return usage(format!("cannot write output: {e}")),
            };
            match sweep::process(&x_grid, &y_grid, &policy, with_oracle.then_some(oracle_digits), sink) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
