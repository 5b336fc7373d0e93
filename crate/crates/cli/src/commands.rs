use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cellform::io::{self, load_manifest, parse_incidence, ProblemRecord, ReportFormat};
use cellform::{
    build_dendrogram, similarity_matrix, solve, ImprovementParams, IncidenceMatrix, SolveParams,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: io::ParseError,
    },
    #[error("{path}: {source}")]
    Manifest {
        path: String,
        source: io::ManifestError,
    },
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Parse { .. } | CliError::Manifest { .. } => 4,
            CliError::Invalid(_) => 5,
        }
    }
}

/// Solver knobs shared by `solve` and `bench`.
#[derive(Debug, Clone, Copy)]
pub struct Tuning {
    pub k: Option<usize>,
    pub max_iter: usize,
    pub patience: usize,
    pub min_cell_machines: usize,
}

impl Tuning {
    fn params(&self, machines: usize) -> Result<SolveParams, CliError> {
        let improvement = ImprovementParams::new(self.max_iter, self.patience)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        let params = SolveParams {
            improvement,
            fixed_k: self.k,
            min_cell_machines: self.min_cell_machines,
            ..Default::default()
        };
        params
            .cut_levels(machines)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok(params)
    }
}

pub fn read_matrix(path: &Path) -> Result<IncidenceMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_incidence(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn cmd_solve(input: &Path, tuning: &Tuning, format: ReportFormat) -> Result<String, CliError> {
    let matrix = read_matrix(input)?;
    let params = tuning.params(matrix.machine_count())?;
    let report = solve(&matrix, &params).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(io::write_report(&report, format))
}

pub fn cmd_dendro(input: &Path, precision: usize) -> Result<String, CliError> {
    let matrix = read_matrix(input)?;
    let tree = build_dendrogram(&similarity_matrix(&matrix));
    Ok(tree.to_table(precision))
}

/// Where a benchmark manifest comes from.
pub enum ManifestSource<'a> {
    File(&'a Path),
    Bundled { data_dir: &'a Path },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct BenchTally {
    pub matched: usize,
    pub improved: usize,
    pub worse: usize,
    pub skipped: usize,
}

/// Comparison table on stdout; per-problem wall time goes to `timing`
/// so the table stays byte-identical between runs.
pub fn cmd_bench(
    source: ManifestSource<'_>,
    tuning: &Tuning,
    timing: &mut dyn FnMut(&str, f64),
) -> Result<(String, BenchTally), CliError> {
    let (text, label, base) = match source {
        ManifestSource::File(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
            (text, path.display().to_string(), base)
        }
        ManifestSource::Bundled { data_dir } => (
            io::BUNDLED_MANIFEST.to_string(),
            "<bundled manifest>".to_string(),
            data_dir.to_path_buf(),
        ),
    };
    let records = load_manifest(&text).map_err(|source| CliError::Manifest {
        path: label,
        source,
    })?;

    let mut out = String::from("name size literature-best reported-hybrid this-run delta status\n");
    let mut tally = BenchTally::default();
    for rec in &records {
        let path = base.join(&rec.path);
        if !path.is_file() {
            tally.skipped += 1;
            let _ = writeln!(
                out,
                "{} {} {} {} - - SKIPPED",
                rec.name,
                rec.size,
                opt_pct(rec.reported_best),
                opt_pct(rec.reported_hybrid)
            );
            continue;
        }
        let started = Instant::now();
        let matrix = read_matrix(&path)?;
        let report = solve(&matrix, &tuning.params(matrix.machine_count())?)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        timing(&rec.name, started.elapsed().as_secs_f64());
        let _ = writeln!(
            out,
            "{}",
            bench_row(rec, &io::percent(report.breakdown.efficacy), &mut tally)
        );
    }
    let _ = writeln!(
        out,
        "summary solved={} matched={} improved={} worse={} skipped={}",
        records.len() - tally.skipped,
        tally.matched,
        tally.improved,
        tally.worse,
        tally.skipped
    );
    Ok((out, tally))
}

fn opt_pct(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

fn bench_row(rec: &ProblemRecord, measured: &str, tally: &mut BenchTally) -> String {
    let (delta, status) = match rec.reported_hybrid {
        Some(reported) => {
            let ours: f64 = measured.parse().expect("formatted percentage");
            let delta = ours - reported;
            let status = if delta.abs() < 0.005 {
                tally.matched += 1;
                "match"
            } else if delta > 0.0 {
                tally.improved += 1;
                "improved"
            } else {
                tally.worse += 1;
                "worse"
            };
            (format!("{delta:+.2}").replace("-0.00", "+0.00"), status)
        }
        None => ("-".to_string(), "n/a"),
    };
    format!(
        "{} {} {} {} {} {} {}",
        rec.name,
        rec.size,
        opt_pct(rec.reported_best),
        opt_pct(rec.reported_hybrid),
        measured,
        delta,
        status
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(hybrid: Option<f64>) -> ProblemRecord {
        ProblemRecord {
            name: "p".into(),
            size: "2x2".into(),
            path: "p.txt".into(),
            reported_best: Some(50.0),
            reported_hybrid: hybrid,
            source: String::new(),
        }
    }

    #[test]
    fn rows_are_flagged_against_reported_hybrid() {
        let mut tally = BenchTally::default();
        assert_eq!(
            bench_row(&record(Some(66.2)), "66.20", &mut tally),
            "p 2x2 50.00 66.20 66.20 +0.00 match"
        );
        assert_eq!(
            bench_row(&record(Some(66.2)), "67.00", &mut tally),
            "p 2x2 50.00 66.20 67.00 +0.80 improved"
        );
        assert_eq!(
            bench_row(&record(Some(66.2)), "66.19", &mut tally),
            "p 2x2 50.00 66.20 66.19 -0.01 worse"
        );
        assert_eq!(
            bench_row(&record(None), "10.00", &mut tally),
            "p 2x2 50.00 - 10.00 - n/a"
        );
        assert_eq!(
            tally,
            BenchTally {
                matched: 1,
                improved: 1,
                worse: 1,
                skipped: 0
            }
        );
    }

    #[test]
    fn tuning_is_validated() {
        let t = Tuning {
            k: None,
            max_iter: 10,
            patience: 20,
            min_cell_machines: 2,
        };
        assert!(matches!(t.params(5), Err(CliError::Invalid(_))));
        let t = Tuning {
            patience: 5,
            k: Some(6),
            ..t
        };
        assert!(matches!(t.params(5), Err(CliError::Invalid(_))));
        let t = Tuning { k: Some(5), ..t };
        assert!(t.params(5).is_ok());
    }
}
