//! Command line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::assets;
use crate::formats::{self, ParseError};
use crate::group::FiniteGroup;
use crate::lattice::FiniteLattice;
use crate::lsub::LSubset;
use crate::report::{self, Format};
use crate::search::DEFAULT_BUDGET;
use crate::theory::{Pair, TheoryError};
use crate::verify::{self, Options, Suite};

#[derive(Debug, Parser)]
#[command(name = "lgroup", version, about = "Lattice-valued subgroups of finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an L-subgroup eta of an L-group mu.
    Classify(ClassifyArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// List every L-subgroup of mu with its classification.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Structured,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Structured => Format::Structured,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    PaperExamples,
    Theorems,
    CrispBridge,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::PaperExamples => Suite::PaperExamples,
            SuiteArg::Theorems => Suite::Theorems,
            SuiteArg::CrispBridge => Suite::CrispBridge,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Propagation steps allowed to each search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Accepted for interface stability; every run is exhaustive.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct Carriers {
    /// Group file (.grp) or the name of a bundled one.
    #[arg(long)]
    pub group: PathBuf,
    /// Lattice file (.lat) or the name of a bundled one.
    #[arg(long)]
    pub lattice: PathBuf,
    /// Second lattice factor; the carrier becomes lattice x product.
    #[arg(long)]
    pub product: Option<PathBuf>,
    /// The parent L-group.
    #[arg(long)]
    pub mu: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub carriers: Carriers,
    /// The L-subgroup to classify.
    #[arg(long)]
    pub eta: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub carriers: Carriers,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite to run; repeat for several. Default: all of them.
    #[arg(long, value_enum)]
    pub suite: Vec<SuiteArg>,
    /// Worker threads (default: LGROUP_WORKERS, else all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{name}: {source}")]
    Theory { name: String, source: TheoryError },
    #[error(transparent)]
    Output(#[from] std::io::Error),
}

/// The file at `path`, or the bundled file of the same name when `path`
/// does not exist.
fn read(path: &Path) -> Result<String, CliError> {
    match std::fs::read_to_string(path) {
        Ok(t) => Ok(t),
        Err(e) => {
            if !path.exists() {
                if let Some(t) = path.file_name().and_then(|n| n.to_str()).and_then(assets::lookup) {
                    return Ok(t.to_string());
                }
            }
            Err(CliError::Io {
                path: path.display().to_string(),
                source: e,
            })
        }
    }
}

fn parse_err(path: &Path) -> impl FnOnce(ParseError) -> CliError + '_ {
    move |source| CliError::Parse {
        path: path.display().to_string(),
        source,
    }
}

struct Loaded {
    group: Arc<FiniteGroup>,
    lattice: Arc<FiniteLattice>,
    mu_name: String,
    mu: LSubset,
}

fn load(c: &Carriers) -> Result<Loaded, CliError> {
    let group = Arc::new(formats::parse_group(&read(&c.group)?).map_err(parse_err(&c.group))?);
    let mut lattice = formats::parse_lattice(&read(&c.lattice)?).map_err(parse_err(&c.lattice))?;
    if let Some(p) = &c.product {
        let other = formats::parse_lattice(&read(p)?).map_err(parse_err(p))?;
        lattice = lattice.product(&other);
    }
    let lattice = Arc::new(lattice);
    if !lattice.is_distributive() {
        eprintln!("warning: lattice {} is not distributive", lattice.name());
    }
    let (mu_name, mu) = lsubset(&c.mu, &group, &lattice)?;
    Ok(Loaded {
        group,
        lattice,
        mu_name,
        mu,
    })
}

fn lsubset(
    path: &Path,
    g: &Arc<FiniteGroup>,
    l: &Arc<FiniteLattice>,
) -> Result<(String, LSubset), CliError> {
    formats::parse_lsubset(&read(path)?, g, l).map_err(parse_err(path))
}

fn theory_err(name: &str) -> impl FnOnce(TheoryError) -> CliError + '_ {
    move |source| CliError::Theory {
        name: name.to_string(),
        source,
    }
}

/// Runs one command, writing the report to `out`. The result is the exit
/// code: 0 when everything checked out, 1 when a verification failed.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Classify(a) => {
            let ld = load(&a.carriers)?;
            let (eta_name, eta) = lsubset(&a.eta, &ld.group, &ld.lattice)?;
            let pair = Pair::new(eta, ld.mu).map_err(theory_err(&eta_name))?;
            let r = pair
                .classify_named(&eta_name, &ld.mu_name, a.common.budget)
                .map_err(theory_err(&eta_name))?;
            out.write_all(report::classification(&r, a.common.format.into()).as_bytes())?;
            Ok(0)
        }
        Command::Enumerate(a) => {
            let ld = load(&a.carriers)?;
            let budget = a.common.budget;
            let all = crate::theory::enumerate_lsubgroups(&ld.mu, budget).map_err(theory_err(&ld.mu_name))?;
            let reports = all
                .into_iter()
                .enumerate()
                .map(|(i, t)| {
                    Pair::trusted(t, ld.mu.clone())
                        .classify_named(&format!("#{i}"), &ld.mu_name, budget)
                        .map_err(theory_err(&ld.mu_name))
                })
                .collect::<Result<Vec<_>, _>>()?;
            out.write_all(report::enumeration(&ld.mu_name, &reports, a.common.format.into()).as_bytes())?;
            Ok(0)
        }
        Command::Verify(a) => {
            let suites: Vec<Suite> = if a.suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                a.suite.iter().map(|&s| s.into()).collect()
            };
            let opts = Options {
                budget: a.common.budget,
                workers: a.workers,
                mutate_wu: std::env::var("LGROUP_MUTATE_WU").is_ok_and(|v| v == "1"),
            };
            let results: Vec<_> = suites.iter().map(|&s| verify::run(s, &opts)).collect();
            out.write_all(report::verification(&results, a.common.format.into()).as_bytes())?;
            Ok(if results.iter().all(|r| r.ok()) { 0 } else { 1 })
        }
    }
}
