//! End-to-end pipeline: similarity, dendrogram, one solve per cut level,
//! best configuration by grouping efficacy.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::assignment::{improve, initial_assignment, ImprovementParams, ImprovementTrace};
use crate::clustering::{build_dendrogram, LinkageTree};
use crate::config::CellConfiguration;
use crate::efficacy::{efficacy, EfficacyBreakdown};
use crate::matrix::IncidenceMatrix;
use crate::ratio::Ratio;
use crate::similarity::{similarity_matrix, SimilarityMatrix};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveParams {
    pub improvement: ImprovementParams,
    /// Cell counts to evaluate; `None` means `2..=max(2, m - 1)`.
    pub k_range: Option<RangeInclusive<usize>>,
    /// Evaluate only this cell count. Overrides `k_range`.
    pub fixed_k: Option<usize>,
    /// Cuts with a cell smaller than this only win when no cut in range
    /// satisfies it.
    pub min_cell_machines: usize,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            improvement: ImprovementParams::default(),
            k_range: None,
            fixed_k: None,
            min_cell_machines: 2,
        }
    }
}

impl SolveParams {
    /// Cell counts to evaluate for an `m`-machine instance.
    pub fn cut_levels(&self, machines: usize) -> Result<RangeInclusive<usize>, Error> {
        let range = match (self.fixed_k, &self.k_range) {
            (Some(k), _) => k..=k,
            (None, Some(r)) => r.clone(),
            (None, None) => 2..=machines.saturating_sub(1).max(2),
        };
        if *range.start() < 1 || range.end() > &machines || range.is_empty() {
            return Err(Error::Domain(format!(
                "cell counts {}..={} must lie within 1..={machines}",
                range.start(),
                range.end()
            )));
        }
        Ok(range)
    }
}

/// Result of one cut level after improvement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CutResult {
    pub k: usize,
    pub efficacy: Ratio,
    /// Machines in the smallest cell of the cut.
    pub smallest_cell: usize,
    /// Whether the cut satisfies `min_cell_machines`.
    pub eligible: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub matrix: IncidenceMatrix,
    pub similarity: SimilarityMatrix,
    pub dendrogram: LinkageTree,
    pub best_k: usize,
    pub best: CellConfiguration,
    pub breakdown: EfficacyBreakdown,
    pub per_cut: Vec<CutResult>,
    /// True when no cut met `min_cell_machines` and every cut competed.
    pub size_rule_relaxed: bool,
    pub trace: ImprovementTrace,
}

struct CutOutcome {
    summary: CutResult,
    config: CellConfiguration,
    trace: ImprovementTrace,
}

pub fn solve(matrix: &IncidenceMatrix, params: &SolveParams) -> Result<SolveReport, Error> {
    let levels = params.cut_levels(matrix.machine_count())?;
    let similarity = similarity_matrix(matrix);
    let dendrogram = build_dendrogram(&similarity);

    let outcomes = levels
        .map(|k| solve_cut(matrix, &dendrogram, k, params))
        .collect::<Result<Vec<_>, _>>()?;

    let relaxed = !outcomes.iter().any(|o| o.summary.eligible);
    let winner = outcomes
        .iter()
        .filter(|o| relaxed || o.summary.eligible)
        // max by efficacy, first (smallest k) on ties
        .fold(None::<&CutOutcome>, |best, o| match best {
            Some(b) if b.summary.efficacy >= o.summary.efficacy => Some(b),
            _ => Some(o),
        })
        .expect("at least one cut level");

    let breakdown = efficacy(matrix, &winner.config)?;
    Ok(SolveReport {
        matrix: matrix.clone(),
        similarity,
        best_k: winner.summary.k,
        best: winner.config.clone(),
        breakdown,
        per_cut: outcomes.iter().map(|o| o.summary).collect(),
        size_rule_relaxed: relaxed,
        trace: winner.trace.clone(),
        dendrogram,
    })
}

fn solve_cut(
    matrix: &IncidenceMatrix,
    tree: &LinkageTree,
    k: usize,
    params: &SolveParams,
) -> Result<CutOutcome, Error> {
    let cells = tree.cut(k)?;
    let start = initial_assignment(matrix, &cells)?;
    let (config, trace) = improve(matrix, &start, &params.improvement)?;
    let smallest_cell = cells.iter().map(Vec::len).min().unwrap_or(0);
    Ok(CutOutcome {
        summary: CutResult {
            k,
            efficacy: trace.final_efficacy(),
            smallest_cell,
            eligible: smallest_cell >= params.min_cell_machines,
            iterations: trace.iterations(),
        },
        config,
        trace,
    })
}
