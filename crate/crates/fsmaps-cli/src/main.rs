//! `fsmaps` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on invalid
//! configuration or guard violations.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fsmaps::exact::rat_to_string;
use fsmaps::hurwitz::{self, HurwitzKind, Partition};
use fsmaps::oracle::{self, Class, Connectivity};
use fsmaps::tables::{self, Family, Mode, TableError, TableSpec};
use fsmaps::verify::{self, Suite, VerifyConfig, VerifyError};

#[derive(Parser)]
#[command(
    name = "fsmaps",
    version,
    about = "Exact counts of ordinary, simple and fully simple maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Strict,
    Weak,
    Simple,
}

impl From<Kind> for HurwitzKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Strict => HurwitzKind::Strict,
            Kind::Weak => HurwitzKind::Weak,
            Kind::Simple => HurwitzKind::Simple,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count tables: one row per boundary-length tuple, columns Q = 0..qmax.
    Tables {
        /// disks, cylinders, tori or pants
        #[arg(long)]
        family: String,
        /// ordinary, simple, fully-simple or mixed
        #[arg(long, default_value = "ordinary")]
        mode: String,
        /// Lengths: rows separated by ';', parts by ','. One-boundary families take one row per entry.
        #[arg(long)]
        lengths: Option<String>,
        #[arg(long, default_value_t = 8)]
        qmax: usize,
        /// Genus (must match the family: 1 for tori, 0 otherwise).
        #[arg(long)]
        genus: Option<usize>,
        /// Curve u-order; derived from qmax when absent.
        #[arg(long)]
        u_order: Option<i64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs verification suites and emits a JSON report.
    Verify {
        /// tables, bijections, closed-forms, oracle, hurwitz or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        qmax: usize,
        /// Half-edge cap for the gluing census.
        #[arg(long, default_value_t = 14)]
        cap: usize,
        /// Largest symmetric-group size for the Hurwitz suite.
        #[arg(long, default_value_t = 6)]
        lmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double Hurwitz numbers: a single value (--mu, --lambda), a matrix over
    /// partitions of --size, or a connected value (--mu, --genus).
    Hurwitz {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Number of transpositions.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        size: Option<u32>,
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted gluing census of boundaries and internal quadrangles.
    Oracle {
        /// Boundary lengths, comma-separated.
        #[arg(long)]
        boundaries: String,
        #[arg(long, default_value_t = 0)]
        quads: usize,
        /// Report simple and fully simple bins as well.
        #[arg(long)]
        classify: bool,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Errors split by exit status.
enum Failure {
    Config(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        match e {
            TableError::Config(_) => Failure::Config(e.into()),
            _ => Failure::Runtime(e.into()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Config(_) => Failure::Config(e.into()),
            _ => Failure::Runtime(e.into()),
        }
    }
}

impl From<hurwitz::HurwitzError> for Failure {
    fn from(e: hurwitz::HurwitzError) -> Self {
        Failure::Config(e.into())
    }
}

impl From<oracle::OracleError> for Failure {
    fn from(e: oracle::OracleError) -> Self {
        Failure::Config(e.into())
    }
}

fn config(msg: impl Into<String>) -> Failure {
    Failure::Config(anyhow::anyhow!(msg.into()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    let res = match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    };
    res.map_err(Failure::Runtime)
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Runtime(e.into()))
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    Ok(Partition::parse(s)?)
}

fn parse_parts(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|e| config(format!("bad length '{p}': {e}")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_tables(
    family: &str,
    mode: &str,
    lengths: Option<&str>,
    qmax: usize,
    genus: Option<usize>,
    u_order: Option<i64>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let family: Family = family.parse()?;
    let mode: Mode = mode.parse()?;
    if !tables::supported(family, mode) {
        return Err(config(format!("mode {mode} is not available for {family}")));
    }
    if let Some(g) = genus {
        if g != family.genus() {
            return Err(config(format!("{family} have genus {}, not {g}", family.genus())));
        }
    }
    let mut rows = match lengths {
        Some(s) => tables::parse_lengths(family, s)?,
        None => tables::default_lengths(family, mode),
    };
    rows.sort();
    rows.dedup();
    let table = tables::generate(&TableSpec {
        family,
        mode,
        lengths: rows,
        q_max: qmax,
        u_order,
    })?;
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => to_json(&table)?,
    };
    emit(out, &text)
}

fn cmd_verify(suite: &str, qmax: usize, cap: usize, lmax: u32, out: &Option<PathBuf>) -> Result<bool, Failure> {
    let suite: Suite = suite.parse()?;
    let reports = verify::run(suite, &VerifyConfig { q_max: qmax, cap, lmax })?;
    let passed = reports.iter().all(|r| r.passed);
    #[derive(Serialize)]
    struct Report<'a> {
        passed: bool,
        suites: &'a [verify::SuiteReport],
    }
    emit(
        out,
        &to_json(&Report {
            passed,
            suites: &reports,
        })?,
    )?;
    Ok(passed)
}

#[derive(Serialize)]
struct HurwitzValue {
    kind: &'static str,
    k: u32,
    mu: Vec<u32>,
    lambda: Vec<u32>,
    value: String,
}

#[derive(Serialize)]
struct HurwitzMatrix {
    kind: &'static str,
    k: u32,
    size: u32,
    partitions: Vec<Vec<u32>>,
    /// `rows[i][j] = R_{μ_i, λ_j}`.
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ConnectedValue {
    kind: &'static str,
    mu: Vec<u32>,
    genus: u32,
    k: u32,
    value: String,
    aut_times_value: String,
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Strict => "strict",
        Kind::Weak => "weak",
        Kind::Simple => "simple",
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_hurwitz(
    kind: Kind,
    k: Option<u32>,
    mu: Option<&str>,
    lambda: Option<&str>,
    size: Option<u32>,
    genus: Option<u32>,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let hk = HurwitzKind::from(kind);
    let text = match (mu, lambda, size, genus) {
        (Some(m), Some(l), None, None) => {
            let k = k.ok_or_else(|| config("--k is required"))?;
            let (m, l) = (parse_partition(m)?, parse_partition(l)?);
            let v = hurwitz::hurwitz_number(hk, k, &m, &l)?;
            to_json(&HurwitzValue {
                kind: kind_name(kind),
                k,
                mu: m.0,
                lambda: l.0,
                value: rat_to_string(&v),
            })?
        }
        (None, None, Some(size), None) => {
            let k = k.ok_or_else(|| config("--k is required"))?;
            let parts = hurwitz::partitions(size);
            hurwitz::char_table(size)?;
            let mut rows = vec![];
            for m in &parts {
                let mut row = vec![];
                for l in &parts {
                    row.push(rat_to_string(&hurwitz::hurwitz_number(hk, k, m, l)?));
                }
                rows.push(row);
            }
            let partitions = parts.into_iter().map(|p| p.0).collect();
            to_json(&HurwitzMatrix {
                kind: kind_name(kind),
                k,
                size,
                partitions,
                rows,
            })?
        }
        (Some(m), None, None, Some(g)) => {
            let m = parse_partition(m)?;
            if m.size() % 2 == 1 {
                return Err(config("connected numbers need |mu| even"));
            }
            let kk = 2 * g as i64 - 2 + m.len() as i64 + m.size() as i64 / 2;
            let v = hurwitz::connected_hurwitz(hk, &m, g)?;
            let aut = fsmaps::exact::Rat::from_integer(m.aut()) * &v;
            to_json(&ConnectedValue {
                kind: kind_name(kind),
                k: kk.max(0) as u32,
                mu: m.0,
                genus: g,
                value: rat_to_string(&v),
                aut_times_value: rat_to_string(&aut),
            })?
        }
        _ => return Err(config("give --mu and --lambda, or --size, or --mu and --genus")),
    };
    emit(out, &text)
}

#[derive(Serialize)]
struct OracleCell {
    genus: u32,
    class: &'static str,
    connectivity: &'static str,
    weight: String,
}

fn class_name(c: Class) -> &'static str {
    match c {
        Class::Ordinary => "ordinary",
        Class::Simple => "simple",
        Class::FullySimple => "fully-simple",
    }
}

fn conn_name(c: Connectivity) -> &'static str {
    match c {
        Connectivity::Connected => "connected",
        Connectivity::BoundaryConnected => "boundary-connected",
    }
}

fn cmd_oracle(
    boundaries: &str,
    quads: usize,
    classify: bool,
    cap: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let b = parse_parts(boundaries)?;
    if b.is_empty() {
        return Err(config("at least one boundary is required"));
    }
    let census = oracle::quad_census(&b, quads, cap)?;
    let cells: Vec<OracleCell> = census
        .cells
        .iter()
        .filter(|((_, c, _), _)| classify || *c == Class::Ordinary)
        .map(|((g, c, k), w)| OracleCell {
            genus: *g,
            class: class_name(*c),
            connectivity: conn_name(*k),
            weight: rat_to_string(w),
        })
        .collect();
    let text = match format {
        Format::Json => to_json(&cells)?,
        Format::Csv => {
            let mut s = String::from("genus,class,connectivity,weight\n");
            for c in &cells {
                s.push_str(&format!(
                    "{},{},{},\"{}\"\n",
                    c.genus, c.class, c.connectivity, c.weight
                ));
            }
            s
        }
    };
    emit(out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Tables {
            family,
            mode,
            lengths,
            qmax,
            genus,
            u_order,
            format,
            out,
        } => cmd_tables(family, mode, lengths.as_deref(), *qmax, *genus, *u_order, *format, out).map(|_| true),
        Command::Verify {
            suite,
            qmax,
            cap,
            lmax,
            out,
        } => cmd_verify(suite, *qmax, *cap, *lmax, out),
        Command::Hurwitz {
            kind,
            k,
            mu,
            lambda,
            size,
            genus,
            out,
        } => cmd_hurwitz(*kind, *k, mu.as_deref(), lambda.as_deref(), *size, *genus, out).map(|_| true),
        Command::Oracle {
            boundaries,
            quads,
            classify,
            cap,
            format,
            out,
        } => cmd_oracle(boundaries, *quads, *classify, *cap, *format, out).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
