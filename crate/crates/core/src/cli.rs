//! Batch command-line front end.
//!
//! Exit codes: 0 success, 1 a check or comparison failed, 2 usage, parse or
//! validation error. Deterministic output goes to stdout (or `--out`);
//! timings go to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commensuration::VirtualAut;
use crate::config::TowerConfig;
use crate::error::{Error, Result};
use crate::tower::Tower;
use crate::verify::{run_suite, RunReport, Suite};
use crate::word::Alphabet;

#[derive(Debug, Parser)]
#[command(
    name = "hallcomm",
    version,
    about = "Hall's universal group inside the commensurator of F2"
)]
pub struct Cli {
    /// Tower configuration file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the commensuration of a tower element.
    Embed {
        #[arg(long)]
        level: usize,
        /// Integer at level 0, cycle notation above.
        #[arg(long)]
        elem: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compose two serialized commensurations: `a ∘ b` (apply `b` first).
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide equality of two serialized commensurations in the commensurator.
    Equal { a: PathBuf, b: PathBuf },
    /// Print the map on fundamental groups from level `k` to level `k-1`,
    /// one row per coset representative and element below.
    Mmap {
        #[arg(long)]
        level: usize,
    },
    /// Print index and rank of `H_k`, or its core graph with `--format dot`.
    Subgroup {
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// Parses `args` (including the program name) and runs the command;
/// returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            eprintln!(
                "{} ({:.3}s)",
                report.summary(),
                start.elapsed().as_secs_f64()
            );
            for failure in &report.failures {
                eprintln!("  FAIL {failure}");
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn load_tower(path: Option<&Path>) -> Result<Tower> {
    let config = match path {
        Some(p) => TowerConfig::from_toml(&read(p)?)?,
        None => TowerConfig::default(),
    };
    Tower::new(config)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

fn load_aut(path: &Path) -> Result<VirtualAut> {
    VirtualAut::from_json(&read(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let tower = load_tower(cli.config.as_deref())?;
    let digest = tower.config().digest();
    let single = |name: &str, ok: bool| {
        let mut r = RunReport::new(name, digest.clone());
        r.record(ok, || format!("{name} verdict is false"));
        r
    };
    match &cli.command {
        Command::Embed {
            level,
            elem,
            format,
            out,
        } => {
            let g = tower.parse_element(*level, elem)?;
            let aut = tower.embed(*level, &g)?;
            let text = match format {
                Format::Json => aut.to_json(),
                Format::Dot => aut.domain().to_dot(&Alphabet::free2()),
            };
            emit(out.as_deref(), &text)?;
            Ok(single("embed", true))
        }
        Command::Verify {
            suite,
            level,
            samples,
            seed,
        } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(&tower, suite, *level, *samples, *seed)?;
            emit(None, &format!("{}\n", report.summary()))?;
            Ok(report)
        }
        Command::Compose { a, b, out } => {
            let composite = VirtualAut::compose(&load_aut(a)?, &load_aut(b)?)?;
            emit(out.as_deref(), &composite.to_json())?;
            Ok(single("compose", true))
        }
        Command::Equal { a, b } => {
            let verdict = load_aut(a)?.comm_equal(&load_aut(b)?);
            emit(None, &format!("{verdict}\n"))?;
            Ok(single("equal", verdict))
        }
        Command::Mmap { level } => {
            emit(None, &tower.m_map_coset_table(*level)?)?;
            Ok(single("mmap", true))
        }
        Command::Subgroup { level, format } => {
            let h = tower.h_subgroup(*level)?;
            let text = match format {
                Some(Format::Dot) => h.to_dot(&Alphabet::free2()),
                Some(Format::Json) => {
                    let a = Alphabet::free2();
                    let basis: Vec<String> = h.basis().iter().map(|w| a.format(w)).collect();
                    let value = serde_json::json!({
                        "level": level,
                        "index": h.index().finite(),
                        "rank": h.rank(),
                        "basis": basis,
                    });
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&value).expect("json value serializes")
                    )
                }
                None => format!("level {level}: index {} rank {}\n", h.index(), h.rank()),
            };
            emit(None, &text)?;
            Ok(single("subgroup", true))
        }
    }
}
