//! Command line front end for `layercraft`.

pub mod hasse;
pub mod input;
pub mod report;
pub mod search;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use layercraft::audit::{self, Suite, SuiteReport};
use thiserror::Error;

use crate::input::InputSpec;
use crate::report::{AnalyzeOptions, Mode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Inconsistency(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "layercraft", version, about = "Layer posets of integral toric and hyperplane arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Source {
    /// JSON input: an arrangement, a poset or a root ideal.
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    pub input: Option<PathBuf>,
    /// Built-in example instead of a file.
    #[arg(long)]
    pub fixture: Option<String>,
}

impl Source {
    fn load(&self) -> Result<InputSpec, CliError> {
        match (&self.input, &self.fixture) {
            (_, Some(name)) => InputSpec::fixture(name),
            (Some(path), None) => InputSpec::from_path(path),
            (None, None) => Err(CliError::Input("no input given".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the layer poset of the input.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Element cap for layer posets.
        #[arg(long, env = "LAYERCRAFT_BUDGET", default_value_t = 200_000)]
        budget: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Hasse diagram in DOT.
    Hasse {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "LAYERCRAFT_BUDGET", default_value_t = 200_000)]
        budget: usize,
    },
    /// Property suites over the fixtures and a random corpus.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Look for divisional posets that are neither inductive nor lattices.
    Search {
        #[arg(long, default_value_t = 3)]
        max_atoms: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// Output of a successful command, plus whether it should exit nonzero.
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

fn write_out(out: &Option<PathBuf>, text: String) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().map_err(|e| CliError::Input(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn render_suites(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("serializable") + "\n",
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                s += &format!("{:<22} {status} ({} instances)\n", r.suite.name(), r.instances);
                for n in &r.notes {
                    s += &format!("  note: {n}\n");
                }
                for f in &r.failures {
                    s += &format!("  counterexample {}: {}\n", f.instance, f.message);
                }
            }
            s
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Analyze { source, format, budget, mode, timing } => {
            let spec = source.load()?;
            let rep = report::analyze(&spec, &AnalyzeOptions { element_cap: budget, mode, timing })?;
            let stdout = match format {
                Format::Json => serde_json::to_string_pretty(&rep).expect("serializable") + "\n",
                Format::Text => report::render_text(&rep),
            };
            Ok(Outcome { stdout, exit_code: 0 })
        }
        Command::Hasse { source, out, budget } => {
            let spec = source.load()?;
            let built = report::build(&spec, budget)?;
            Ok(Outcome { stdout: write_out(&out, hasse::to_dot(&built.poset))?, exit_code: 0 })
        }
        Command::Verify { suite, seed, count, jobs, format } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                vec![Suite::from_name(&suite).ok_or_else(|| CliError::Input(format!("unknown suite {suite:?}; known: all, {}", names.join(", "))))?]
            };
            let reports = with_jobs(jobs, || suites.iter().map(|&s| audit::run_suite(s, seed, count)).collect::<Vec<_>>())?;
            let ok = reports.iter().all(SuiteReport::passed);
            Ok(Outcome { stdout: render_suites(&reports, format), exit_code: if ok { 0 } else { 3 } })
        }
        Command::Search { max_atoms, out, jobs } => {
            let log = with_jobs(jobs, || search::search(max_atoms))?;
            log::info!("examined {} arrangements, {} candidates", log.examined, log.candidates.len());
            Ok(Outcome { stdout: write_out(&out, serde_json::to_string_pretty(&log).expect("serializable") + "\n")?, exit_code: 0 })
        }
    }
}

/// Entry point shared by the binary: prints and returns the exit code.
pub fn main_with(cli: Cli) -> i32 {
    match run(cli) {
        Ok(o) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(o.stdout.as_bytes());
            o.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
