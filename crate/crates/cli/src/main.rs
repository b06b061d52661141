//! `wefe`: batch verification of weighted Einstein solutions.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{ErrorBlock, RunReport, Status};

#[derive(Parser)]
#[command(
    name = "wefe",
    version,
    about = "Verify vacuum weighted Einstein solutions and the supporting algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings (the report is then no longer reproducible byte for byte).
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Clone)]
struct Selection {
    /// Catalog entry id; repeatable. Without --entry or --manifest every entry is used.
    #[arg(long)]
    entry: Vec<String>,
    /// Manifest file describing an entry; repeatable.
    #[arg(long)]
    manifest: Vec<PathBuf>,
    /// Parameter override `name=value`, applied to catalog entries.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
}

#[derive(Subcommand)]
enum Command {
    /// Check field equations, identities and expected verdicts.
    Verify {
        #[command(flatten)]
        sel: Selection,
        #[arg(long, default_value_t = wefe::consts::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = wefe::consts::ATOL)]
        tol_atol: f64,
        #[arg(long, default_value_t = wefe::consts::RTOL)]
        tol_rtol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Ricci operator type and causal character of the gradient at a point.
    Classify {
        #[command(flatten)]
        sel: Selection,
        /// Comma-separated coordinates; the box center by default.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
        #[command(flatten)]
        out: Output,
    },
    /// Derived generators, Groebner basis and the membership of the target polynomial.
    Groebner {
        #[arg(long, default_value_t = wefe::consts::GROEBNER_PAIR_BUDGET)]
        max_pairs: usize,
        #[arg(long, default_value_t = wefe::consts::GROEBNER_TERM_BUDGET)]
        max_terms: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Integrate the reduced warped system from a closed-form branch.
    Ode {
        /// Catalog entry carrying a closed form (the cor36-* entries).
        #[arg(long)]
        entry: String,
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t_start: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        t_end: f64,
        #[arg(long, default_value_t = wefe::consts::ODE_TOL)]
        tol: f64,
        /// Write the trajectory as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Catalog overview.
    List {
        #[command(flatten)]
        out: Output,
    },
    /// Print the manifest form of a catalog entry.
    Manifest {
        entry: String,
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
    },
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {v:?}"))?;
    Ok((k.trim().to_string(), v))
}

fn seed() -> Result<Option<u64>, String> {
    match std::env::var("WEFE_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("WEFE_SEED must be an unsigned integer, got {s:?}")),
        Err(_) => Ok(None),
    }
}

fn emit(report: &RunReport, out: &Output) -> std::io::Result<()> {
    let text = match out.format {
        Format::Json => report::to_json(report),
        Format::Text => commands::render_text(report),
    };
    match &out.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn bad_input(command: &str, msg: String) -> RunReport {
    RunReport {
        toolkit: report::TOOLKIT,
        command: command.to_string(),
        entries: vec![],
        status: Status::BadInput,
        body: serde_json::Value::Null,
        errors: vec![ErrorBlock::new(None, "bad_input", msg)],
        timings: None,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::BadInput.exit_code()
            } else {
                0
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let seed = match seed() {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(Status::BadInput.exit_code());
        }
    };
    let (report, out) = match cli.command {
        Command::Verify {
            sel,
            samples,
            tol_atol,
            tol_rtol,
            out,
        } => {
            let tol = wefe::Tolerances {
                atol: tol_atol,
                rtol: tol_rtol,
            };
            let plan = wefe::SamplePlan::new(samples).with_seed(seed);
            let r = commands::verify(
                &sel.entry,
                &sel.manifest,
                &sel.params,
                &plan,
                &tol,
                out.timings,
            );
            (r, out)
        }
        Command::Classify { sel, point, out } => (
            commands::classify(&sel.entry, &sel.manifest, &sel.params, point.as_deref()),
            out,
        ),
        Command::Groebner {
            max_pairs,
            max_terms,
            out,
        } => (
            commands::groebner(
                &wefe::groebner::Budget {
                    pairs: max_pairs,
                    terms: max_terms,
                },
                out.timings,
            ),
            out,
        ),
        Command::Ode {
            entry,
            params,
            t_start,
            t_end,
            tol,
            csv,
            out,
        } => (
            commands::ode(
                &entry,
                &params,
                t_start,
                t_end,
                tol,
                csv.as_deref(),
                out.timings,
            ),
            out,
        ),
        Command::List { out } => (commands::list(), out),
        Command::Manifest { entry, params } => match wefe::catalog::build(&entry, &params) {
            Ok(e) => {
                print!("{}", wefe::catalog::to_manifest(&e));
                return;
            }
            Err(err) => {
                let r = bad_input("manifest", err.to_string());
                (
                    r,
                    Output {
                        format: Format::Text,
                        out: None,
                        timings: false,
                    },
                )
            }
        },
    };
    if let Err(e) = emit(&report, &out) {
        eprintln!("error: cannot write report: {e}");
        std::process::exit(Status::BadInput.exit_code());
    }
    std::process::exit(report.status.exit_code());
}
