use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use sgc_core::analyze::analyze;
use sgc_core::choose::{is_chromatic_choosable, CapPolicy, ChromaticMode};
use sgc_core::fixtures::{negative_k4_expansion, negative_k4_lists};
use sgc_core::format::{parse_graph, parse_lists, parse_parts};
use sgc_core::solve::{list_colorable, mn_chromatic, zero_free_chromatic};
use sgc_core::{ListAssignment, PartitionedExpansion, SignedGraph};

use crate::campaign::{conjecture_search, verify_theorem, CampaignReport, Engine};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] sgc_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Parser)]
#[command(name = "sgc", version, about = "Coloring and list coloring of signed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Colors ±1..±k, counted as 2k
    ZeroFree,
    /// Symmetric sets M_n, which contain 0 for odd n
    Mn,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the chromatic number and a witness coloring
    Chrom {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "zero-free")]
        mode: ModeArg,
    },
    /// Decide whether a graph can be colored from its lists
    ListColor {
        #[arg(required_unless_present = "k4_demo")]
        graph: Option<PathBuf>,
        #[arg(required_unless_present = "k4_demo")]
        lists: Option<PathBuf>,
        /// Use the built-in negative K4 instance
        #[arg(long, conflicts_with_all = ["graph", "lists"])]
        k4_demo: bool,
    },
    /// Check 2k-choosability of every complete k-partite expansion on at
    /// most 2k+1 vertices
    VerifyTheorem {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Largest absolute value in enumerated lists
        #[arg(long)]
        cap: u32,
        /// Canonical systems per instance [default: unbounded]
        #[arg(long)]
        budget: Option<u64>,
        /// Random systems at cap+1 for instances not verified exactly
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON-lines report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search small signed graphs with n <= chi+1 for lists of size chi
    /// that admit no coloring
    ConjectureSearch {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long)]
        cap: u32,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also merge graphs that are isomorphic up to switching
        #[arg(long)]
        iso: bool,
    },
    /// Report list statistics and weak colorings for a bad-list instance
    Analyze {
        graph: PathBuf,
        lists: PathBuf,
        /// JSON file {"parts": [[0, 1], [2]]}
        parts: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show that the negative K4 is not chromatic-choosable
    K4Demo,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<SignedGraph, CliError> {
    Ok(parse_graph(&read(path)?)?)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn describe_lists(lists: &ListAssignment) -> String {
    lists
        .lists()
        .iter()
        .enumerate()
        .map(|(v, l)| {
            let colors: Vec<String> = l.iter().map(|c| c.to_string()).collect();
            format!("{v}: {{{}}}", colors.join(", "))
        })
        .collect::<Vec<_>>()
        .join("  ")
}

fn list_color(out: &mut dyn Write, g: &SignedGraph, lists: &ListAssignment) -> Result<(), CliError> {
    let r = list_colorable(g, lists)?;
    match r.witness {
        Some(f) => emit(out, &format!("SAT\nwitness: {f}\n")),
        None => emit(out, "UNSAT\n"),
    }
}

fn write_report(
    out: &mut dyn Write,
    report: &CampaignReport,
    path: Option<&Path>,
) -> Result<(), CliError> {
    let text = report.to_jsonl();
    match path {
        Some(p) => {
            write_file(p, &text)?;
            let statuses: Vec<String> = report
                .summary
                .statuses
                .iter()
                .map(|(s, c)| format!("{s}={c}"))
                .collect();
            emit(
                out,
                &format!(
                    "{}: {} instances ({} out of scope), {}, violations={}, inconsistencies={}\n",
                    report.campaign,
                    report.summary.instances,
                    report.summary.out_of_scope,
                    statuses.join(" "),
                    report.violations.len(),
                    report.inconsistencies.len()
                ),
            )
        }
        None => emit(out, &text),
    }
}

/// Runs one command, writing its output to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Chrom { graph, mode } => {
            let g = load_graph(&graph)?;
            let (label, (value, witness)) = match mode {
                ModeArg::ZeroFree => ("chi*", zero_free_chromatic(&g)),
                ModeArg::Mn => ("chi", mn_chromatic(&g)),
            };
            emit(out, &format!("{label} = {value}\nwitness: {witness}\n"))?;
        }
        Command::ListColor {
            graph,
            lists,
            k4_demo,
        } => {
            if k4_demo {
                let pe = negative_k4_expansion();
                list_color(out, pe.graph(), &negative_k4_lists())?;
            } else {
                let (graph, lists) = graph.zip(lists).ok_or_else(|| {
                    CliError::Usage("a graph file and a lists file are required".into())
                })?;
                let g = load_graph(&graph)?;
                let l = parse_lists(&read(&lists)?, g.vertex_count())?;
                list_color(out, &g, &l)?;
            }
        }
        Command::VerifyTheorem {
            k,
            cap,
            budget,
            samples,
            seed,
            out: path,
        } => {
            let report = verify_theorem(
                k as usize,
                cap,
                budget.unwrap_or(u64::MAX),
                samples,
                seed,
                &Engine,
            )?;
            write_report(out, &report, path.as_deref())?;
            return Ok(report.verify_exit_code());
        }
        Command::ConjectureSearch {
            max_n,
            cap,
            budget,
            seed,
            out: path,
            iso,
        } => {
            let report = conjecture_search(
                max_n as usize,
                cap,
                budget.unwrap_or(u64::MAX),
                seed,
                iso,
                &Engine,
            )?;
            write_report(out, &report, path.as_deref())?;
        }
        Command::Analyze {
            graph,
            lists,
            parts,
            out: path,
        } => {
            let g = load_graph(&graph)?;
            let l = parse_lists(&read(&lists)?, g.vertex_count())?;
            let parts = parse_parts(&read(&parts)?)?;
            let pe = PartitionedExpansion::new(g, parts)?;
            let report = analyze(&pe, &l)?;
            let text = serde_json::to_string_pretty(&report).unwrap() + "\n";
            match path {
                Some(p) => write_file(&p, &text)?,
                None => emit(out, &text)?,
            }
        }
        Command::K4Demo => {
            let pe = negative_k4_expansion();
            let lists = negative_k4_lists();
            emit(
                out,
                &format!("negative K4 with lists  {}\n", describe_lists(&lists)),
            )?;
            list_color(out, pe.graph(), &lists)?;
            let c = is_chromatic_choosable(
                pe.graph(),
                ChromaticMode::Mn,
                CapPolicy::Exact,
                u64::MAX,
                None,
            )?;
            let verdict = match c.is_chromatic_choosable() {
                Some(b) => b.to_string(),
                None => "undecided".into(),
            };
            emit(
                out,
                &format!(
                    "chi = {}\nchromatic-choosable (mn): {verdict}\n",
                    c.chromatic_number
                ),
            )?;
            if let Some(cert) = &c.verdict.certificate {
                emit(out, &format!("bad lists found by search  {}\n", describe_lists(cert)))?;
            }
        }
    }
    Ok(0)
}
