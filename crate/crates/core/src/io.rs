//! Text formats: incidence files, benchmark manifests, solve reports.
//!
//! Incidence file:
//!
//! ```text
//! # optional comment lines
//! 5 7
//! 0 1 0 1 1 1 0
//! ...
//! ```
//!
//! Manifest, one problem per line, `-` for an absent value:
//!
//! ```text
//! # name  size  path  literature-best  hybrid  source...
//! king-nakornchai-5x7  5x7  king-nakornchai-5x7.txt  73.68  73.68  King & Nakornchai (1982)
//! ```

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{IncidenceMatrix, MatrixError};
use crate::ratio::Ratio;
use crate::solver::SolveReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no header line \"machines parts\" found")]
    MissingHeader,
    #[error("line {line}: expected header \"machines parts\", got {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: token {column} is {token:?}, expected 0 or 1")]
    BadToken {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}: machine {machine} has {found} entries, expected {expected}")]
    RowLength {
        line: usize,
        machine: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} machine rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {line}: data after the last machine row")]
    TrailingData { line: usize },
    #[error("line {line}: {source}")]
    InvalidRow { line: usize, source: MatrixError },
    #[error("{0}")]
    Invalid(MatrixError),
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_incidence(text: &str) -> Result<IncidenceMatrix, ParseError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(usize::from_str)
        .collect::<Result<_, _>>()
        .map_err(|_| bad_header(header_line, header))?;
    let [machines, parts] = dims[..] else {
        return Err(bad_header(header_line, header));
    };

    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(machines);
    let mut row_lines = Vec::with_capacity(machines);
    for (line, content) in lines {
        if rows.len() == machines {
            return Err(ParseError::TrailingData { line });
        }
        let row = content
            .split_whitespace()
            .enumerate()
            .map(|(c, tok)| match tok {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(ParseError::BadToken {
                    line,
                    column: c + 1,
                    token: tok.to_string(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != parts {
            return Err(ParseError::RowLength {
                line,
                machine: rows.len() + 1,
                expected: parts,
                found: row.len(),
            });
        }
        rows.push(row);
        row_lines.push(line);
    }
    if rows.len() != machines {
        return Err(ParseError::MissingRows {
            expected: machines,
            found: rows.len(),
        });
    }
    IncidenceMatrix::from_rows(&rows).map_err(|e| match e {
        MatrixError::EmptyMachine(i) => ParseError::InvalidRow {
            line: row_lines[i - 1],
            source: e,
        },
        MatrixError::TooSmall { .. } => ParseError::InvalidRow {
            line: header_line,
            source: e,
        },
        other => ParseError::Invalid(other),
    })
}

fn bad_header(line: usize, text: &str) -> ParseError {
    ParseError::BadHeader {
        line,
        text: text.to_string(),
    }
}

/// Canonical incidence-file text; [`parse_incidence`] reads it back
/// unchanged.
pub fn write_incidence(matrix: &IncidenceMatrix) -> String {
    matrix.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

/// Efficacy as a percentage with two decimals, e.g. `73.68`.
pub fn percent(r: Ratio) -> String {
    format!("{:.2}", r.percent())
}

pub fn write_report(report: &SolveReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => text_report(report),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&ReportDocument::from(report))
                .expect("report document serializes");
            s.push('\n');
            s
        }
    }
}

fn labels(prefix: char, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|i| format!("{prefix}{}", i + 1)).collect()
}

fn text_report(report: &SolveReport) -> String {
    let m = &report.matrix;
    let cfg = &report.best;
    let b = &report.breakdown;
    let k = cfg.cell_count();
    let machine_groups: Vec<Vec<usize>> = (0..k).map(|c| cfg.machines_in(c)).collect();
    let part_groups: Vec<Vec<usize>> = (0..k).map(|c| cfg.parts_in(c)).collect();

    let mut out = String::new();
    let _ = writeln!(out, "instance {}x{}", m.machine_count(), m.part_count());
    let _ = writeln!(out, "cells {k}");
    let _ = writeln!(out, "efficacy {}", percent(b.efficacy));
    let _ = writeln!(out, "tau {}", b.efficacy);
    let _ = writeln!(out, "ones {}", b.total_ones);
    let _ = writeln!(out, "exceptional {}", b.exceptional);
    let _ = writeln!(out, "voids {}", b.voids);
    let join = |groups: &[Vec<usize>], prefix| {
        groups
            .iter()
            .map(|g| {
                if g.is_empty() {
                    "-".to_string()
                } else {
                    labels(prefix, g).join(",")
                }
            })
            .collect::<Vec<_>>()
            .join(" | ")
    };
    let _ = writeln!(out, "machine cells {}", join(&machine_groups, 'm'));
    let _ = writeln!(out, "part families {}", join(&part_groups, 'p'));
    if report.size_rule_relaxed {
        let _ = writeln!(
            out,
            "note every evaluated cut has a cell below the minimum size; size rule ignored"
        );
    }

    out.push_str("\nblock matrix\n");
    out.push_str(&block_matrix(m, &machine_groups, &part_groups));

    out.push_str("\nper-cut\nk efficacy smallest-cell eligible iterations\n");
    for c in &report.per_cut {
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            c.k,
            percent(c.efficacy),
            c.smallest_cell,
            if c.eligible { "yes" } else { "no" },
            c.iterations
        );
    }

    let t = &report.trace;
    let _ = writeln!(
        out,
        "\ntrace k={} start={} stop={}",
        report.best_k,
        percent(t.start),
        t.stop.as_str()
    );
    out.push_str("iteration efficacy accepted\n");
    for s in &t.steps {
        let _ = writeln!(
            out,
            "{} {} {}",
            s.iteration,
            percent(s.efficacy),
            if s.accepted { "yes" } else { "no" }
        );
    }
    out
}

/// Rows and columns grouped cell by cell; `|` separates part families and a
/// dashed line separates machine cells.
fn block_matrix(m: &IncidenceMatrix, machines: &[Vec<usize>], parts: &[Vec<usize>]) -> String {
    let width = format!("p{}", m.part_count())
        .len()
        .max(format!("m{}", m.machine_count()).len());
    let mut header = format!("{:width$}", "");
    for (c, fam) in parts.iter().enumerate() {
        if c > 0 {
            header.push_str(" |");
        }
        for j in fam {
            let _ = write!(header, " {:>width$}", format!("p{}", j + 1));
        }
    }
    let mut out = header.trim_end().to_string();
    out.push('\n');
    let rule: String = "-".repeat(out.trim_end().len());
    for (c, group) in machines.iter().enumerate() {
        if c > 0 {
            out.push_str(&rule);
            out.push('\n');
        }
        for &i in group {
            let mut line = format!("{:<width$}", format!("m{}", i + 1));
            for (d, fam) in parts.iter().enumerate() {
                if d > 0 {
                    line.push_str(" |");
                }
                for &j in fam {
                    let v = if m.get(i, j) { "1" } else { "0" };
                    let _ = write!(line, " {v:>width$}");
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize)]
struct ReportDocument {
    format: &'static str,
    machines: usize,
    parts: usize,
    cell_count: usize,
    efficacy: RatioDoc,
    total_ones: usize,
    exceptional: usize,
    voids: usize,
    cells: Vec<CellDoc>,
    size_rule_relaxed: bool,
    per_cut: Vec<CutDoc>,
    trace: TraceDoc,
    dendrogram: Vec<MergeDoc>,
}

#[derive(Serialize)]
struct RatioDoc {
    numerator: u64,
    denominator: u64,
    percent: String,
}

impl From<Ratio> for RatioDoc {
    fn from(r: Ratio) -> Self {
        RatioDoc {
            numerator: r.numer(),
            denominator: r.denom(),
            percent: percent(r),
        }
    }
}

#[derive(Serialize)]
struct CellDoc {
    cell: usize,
    machines: Vec<usize>,
    parts: Vec<usize>,
}

#[derive(Serialize)]
struct CutDoc {
    k: usize,
    efficacy: RatioDoc,
    smallest_cell: usize,
    eligible: bool,
    iterations: usize,
}

#[derive(Serialize)]
struct TraceDoc {
    k: usize,
    start: RatioDoc,
    stop: &'static str,
    steps: Vec<StepDoc>,
}

#[derive(Serialize)]
struct StepDoc {
    iteration: usize,
    efficacy: String,
    accepted: bool,
    part: usize,
    moved_to: Option<usize>,
}

#[derive(Serialize)]
struct MergeDoc {
    left: usize,
    right: usize,
    level: f64,
}

fn one_based(v: Vec<usize>) -> Vec<usize> {
    v.into_iter().map(|i| i + 1).collect()
}

impl From<&SolveReport> for ReportDocument {
    fn from(r: &SolveReport) -> Self {
        let cfg = &r.best;
        ReportDocument {
            format: "cellform-report/1",
            machines: r.matrix.machine_count(),
            parts: r.matrix.part_count(),
            cell_count: cfg.cell_count(),
            efficacy: r.breakdown.efficacy.into(),
            total_ones: r.breakdown.total_ones,
            exceptional: r.breakdown.exceptional,
            voids: r.breakdown.voids,
            cells: (0..cfg.cell_count())
                .map(|c| CellDoc {
                    cell: c + 1,
                    machines: one_based(cfg.machines_in(c)),
                    parts: one_based(cfg.parts_in(c)),
                })
                .collect(),
            size_rule_relaxed: r.size_rule_relaxed,
            per_cut: r
                .per_cut
                .iter()
                .map(|c| CutDoc {
                    k: c.k,
                    efficacy: c.efficacy.into(),
                    smallest_cell: c.smallest_cell,
                    eligible: c.eligible,
                    iterations: c.iterations,
                })
                .collect(),
            trace: TraceDoc {
                k: r.best_k,
                start: r.trace.start.into(),
                stop: r.trace.stop.as_str(),
                steps: r
                    .trace
                    .steps
                    .iter()
                    .map(|s| StepDoc {
                        iteration: s.iteration,
                        efficacy: percent(s.efficacy),
                        accepted: s.accepted,
                        part: s.part + 1,
                        moved_to: s.moved_to.map(|c| c + 1),
                    })
                    .collect(),
            },
            dendrogram: r
                .dendrogram
                .merges()
                .iter()
                .map(|m| MergeDoc {
                    left: m.left,
                    right: m.right,
                    level: m.level,
                })
                .collect(),
        }
    }
}

/// One benchmark problem from a manifest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemRecord {
    pub name: String,
    /// `MxN` size label.
    pub size: String,
    /// Data file, relative paths resolved against the manifest's directory.
    pub path: PathBuf,
    /// Best efficacy (%) reported in the literature.
    pub reported_best: Option<f64>,
    /// Efficacy (%) reported for the hybrid clustering method.
    pub reported_hybrid: Option<f64>,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("manifest line {line}: {message}")]
pub struct ManifestError {
    pub line: usize,
    pub message: String,
}

/// The shipped manifest listing the ten literature benchmarks. Only the
/// 5×7 King & Nakornchai matrix ships as a data file.
pub const BUNDLED_MANIFEST: &str = include_str!("../../../data/table1.manifest");

pub fn load_manifest(text: &str) -> Result<Vec<ProblemRecord>, ManifestError> {
    data_lines(text)
        .map(|(line, content)| parse_record(line, content))
        .collect()
}

fn parse_record(line: usize, content: &str) -> Result<ProblemRecord, ManifestError> {
    let err = |message: String| ManifestError { line, message };
    let mut fields = content.split_whitespace();
    let mut next = |what: &str| fields.next().ok_or_else(|| err(format!("missing {what}")));
    let name = next("name")?.to_string();
    let size = next("size")?.to_string();
    let path = PathBuf::from(next("path")?);
    let best = next("literature-best value")?;
    let hybrid = next("hybrid value")?;
    let source = fields.collect::<Vec<_>>().join(" ");

    let valid_size = size
        .split_once('x')
        .is_some_and(|(a, b)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
    if !valid_size {
        return Err(err(format!("size {size:?} is not of the form MxN")));
    }
    let pct = |s: &str| -> Result<Option<f64>, ManifestError> {
        if s == "-" {
            return Ok(None);
        }
        match s.parse::<f64>() {
            Ok(v) if (0.0..=100.0).contains(&v) => Ok(Some(v)),
            _ => Err(err(format!("{s:?} is not a percentage in [0, 100]"))),
        }
    };
    Ok(ProblemRecord {
        name,
        size,
        path,
        reported_best: pct(best)?,
        reported_hybrid: pct(hybrid)?,
        source,
    })
}
