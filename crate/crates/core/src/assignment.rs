//! Part-family formation: initial placement of parts into machine cells and
//! the efficacy-driven reassignment loop.

use serde::Serialize;

use crate::config::CellConfiguration;
use crate::efficacy::efficacy_unchecked;
use crate::matrix::IncidenceMatrix;
use crate::ratio::Ratio;
use crate::Error;

/// Stopping rules for [`improve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImprovementParams {
    max_iterations: usize,
    patience: usize,
}

impl ImprovementParams {
    pub const DEFAULT_MAX_ITERATIONS: usize = 100;
    pub const DEFAULT_PATIENCE: usize = 20;

    /// `max_iterations >= 1` and `1 <= patience <= max_iterations`.
    pub fn new(max_iterations: usize, patience: usize) -> Result<Self, Error> {
        if max_iterations == 0 {
            return Err(Error::Domain("max iterations must be at least 1".into()));
        }
        if patience == 0 || patience > max_iterations {
            return Err(Error::Domain(format!(
                "patience must be in 1..={max_iterations}, got {patience}"
            )));
        }
        Ok(ImprovementParams {
            max_iterations,
            patience,
        })
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    pub fn patience(&self) -> usize {
        self.patience
    }
}

impl Default for ImprovementParams {
    fn default() -> Self {
        ImprovementParams {
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            patience: Self::DEFAULT_PATIENCE,
        }
    }
}

/// One part-selection attempt of the improvement loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// 1-based attempt number.
    pub iteration: usize,
    /// Efficacy after the attempt.
    pub efficacy: Ratio,
    pub accepted: bool,
    /// 0-based part that was tried.
    pub part: usize,
    /// Cell the part moved to, when accepted.
    pub moved_to: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// A full pass over every part found no improving move.
    LocalOptimum,
    MaxIterations,
    Patience,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::LocalOptimum => "local-optimum",
            StopReason::MaxIterations => "max-iterations",
            StopReason::Patience => "patience",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImprovementTrace {
    pub start: Ratio,
    pub steps: Vec<TraceStep>,
    pub stop: StopReason,
}

impl ImprovementTrace {
    pub fn accepted(&self) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(|s| s.accepted)
    }

    pub fn iterations(&self) -> usize {
        self.steps.len()
    }

    pub fn final_efficacy(&self) -> Ratio {
        self.steps.last().map_or(self.start, |s| s.efficacy)
    }
}

/// Ingredients of the membership index of a part to a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Membership {
    /// N_cj: machines of the cell that process the part.
    pub covered: usize,
    /// m_c: machines in the cell.
    pub cell_size: usize,
    /// n_j: machines the part visits overall.
    pub part_load: usize,
    /// M_cj: machines of the cell the part does not use.
    pub unused: usize,
    /// v_c: voids of the cell under the current configuration.
    pub voids: usize,
}

impl Membership {
    /// D_cj = (N_cj / m_c) · (N_cj / n_j) · 1 / max(v_c, 1).
    pub fn index(&self) -> Ratio {
        let n = self.covered as u64;
        Ratio::new(
            n * n,
            (self.cell_size * self.part_load * self.voids.max(1)) as u64,
        )
    }
}

/// Places every part in the cell holding most of its machines; ties go to
/// the cell where those machines are the largest fraction of the cell, then
/// to the lowest cell index.
pub fn initial_assignment(
    matrix: &IncidenceMatrix,
    cells: &[Vec<usize>],
) -> Result<CellConfiguration, Error> {
    check_partition(matrix.machine_count(), cells)?;
    let part_cell = (0..matrix.part_count())
        .map(|j| {
            let mut best = 0;
            let mut best_key = (0usize, Ratio::ZERO);
            for (c, members) in cells.iter().enumerate() {
                let covered = members.iter().filter(|&&i| matrix.get(i, j)).count();
                let key = (covered, Ratio::new(covered as u64, members.len() as u64));
                if c == 0 || key > best_key {
                    best = c;
                    best_key = key;
                }
            }
            best
        })
        .collect();
    Ok(CellConfiguration::from_cells(
        matrix.machine_count(),
        cells,
        part_cell,
    ))
}

fn check_partition(machines: usize, cells: &[Vec<usize>]) -> Result<(), Error> {
    let mut seen = vec![false; machines];
    for (c, members) in cells.iter().enumerate() {
        if members.is_empty() {
            return Err(Error::Domain(format!("cell {} has no machines", c + 1)));
        }
        for &i in members {
            match seen.get_mut(i) {
                None => {
                    return Err(Error::Domain(format!(
                        "cell {} lists machine {} of {machines}",
                        c + 1,
                        i + 1
                    )))
                }
                Some(true) => {
                    return Err(Error::Domain(format!(
                        "machine {} appears in more than one cell",
                        i + 1
                    )))
                }
                Some(s) => *s = true,
            }
        }
    }
    if let Some(i) = seen.iter().position(|&s| !s) {
        return Err(Error::Domain(format!("machine {} is in no cell", i + 1)));
    }
    Ok(())
}

pub fn membership_index(
    matrix: &IncidenceMatrix,
    config: &CellConfiguration,
    cell: usize,
    part: usize,
) -> Result<Membership, Error> {
    config
        .validate(matrix)
        .map_err(Error::InvalidConfiguration)?;
    if cell >= config.cell_count() {
        return Err(Error::Domain(format!(
            "cell {} outside 1..={}",
            cell + 1,
            config.cell_count()
        )));
    }
    if part >= matrix.part_count() {
        return Err(Error::Domain(format!(
            "part {} outside 1..={}",
            part + 1,
            matrix.part_count()
        )));
    }
    let voids = cell_voids(matrix, config);
    Ok(membership_with(matrix, config, &voids, cell, part))
}

fn cell_voids(matrix: &IncidenceMatrix, config: &CellConfiguration) -> Vec<usize> {
    let mut voids = vec![0; config.cell_count()];
    for i in 0..matrix.machine_count() {
        let c = config.machine_cell(i);
        voids[c] += matrix
            .row(i)
            .iter()
            .zip(config.part_cells())
            .filter(|&(&one, &pc)| !one && pc == c)
            .count();
    }
    voids
}

fn membership_with(
    matrix: &IncidenceMatrix,
    config: &CellConfiguration,
    voids: &[usize],
    cell: usize,
    part: usize,
) -> Membership {
    let (mut covered, mut cell_size) = (0, 0);
    for i in 0..matrix.machine_count() {
        if config.machine_cell(i) == cell {
            cell_size += 1;
            covered += usize::from(matrix.get(i, part));
        }
    }
    Membership {
        covered,
        cell_size,
        part_load: matrix.part_load(part),
        unused: cell_size - covered,
        voids: voids[cell],
    }
}

/// Machines of the part's current cell that it does not visit.
fn unused_in_own_cell(matrix: &IncidenceMatrix, config: &CellConfiguration, part: usize) -> usize {
    let cell = config.part_cell(part);
    (0..matrix.machine_count())
        .filter(|&i| config.machine_cell(i) == cell && !matrix.get(i, part))
        .count()
}

/// Reassigns parts one at a time while grouping efficacy strictly improves.
///
/// Each pass ranks parts by unused machines in their current cell (most
/// first, then lowest index). The selected part tries the other cells in
/// descending membership index (then lowest index) and takes the first move
/// that raises efficacy. An accepted move starts a new pass. Machine cells
/// never change.
pub fn improve(
    matrix: &IncidenceMatrix,
    start: &CellConfiguration,
    params: &ImprovementParams,
) -> Result<(CellConfiguration, ImprovementTrace), Error> {
    start
        .validate(matrix)
        .map_err(Error::InvalidConfiguration)?;
    let mut config = start.clone();
    let initial = efficacy_unchecked(matrix, &config).efficacy;
    let mut current = initial;
    let mut steps = Vec::new();
    let mut stale = 0;

    let stop = 'passes: loop {
        let mut order: Vec<(usize, usize)> = (0..matrix.part_count())
            .map(|j| (unused_in_own_cell(matrix, &config, j), j))
            .collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut improved = false;
        for (_, part) in order {
            if steps.len() >= params.max_iterations {
                break 'passes StopReason::MaxIterations;
            }
            if stale >= params.patience {
                break 'passes StopReason::Patience;
            }
            let from = config.part_cell(part);
            let voids = cell_voids(matrix, &config);
            let mut candidates: Vec<(Ratio, usize)> = (0..config.cell_count())
                .filter(|&c| c != from)
                .map(|c| (membership_with(matrix, &config, &voids, c, part).index(), c))
                .collect();
            candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

            let mut moved_to = None;
            for (_, cell) in candidates {
                config.set_part_cell(part, cell);
                let trial = efficacy_unchecked(matrix, &config).efficacy;
                if trial > current {
                    current = trial;
                    moved_to = Some(cell);
                    break;
                }
                config.set_part_cell(part, from);
            }
            steps.push(TraceStep {
                iteration: steps.len() + 1,
                efficacy: current,
                accepted: moved_to.is_some(),
                part,
                moved_to,
            });
            if moved_to.is_some() {
                stale = 0;
                improved = true;
                break;
            }
            stale += 1;
        }
        if !improved {
            break StopReason::LocalOptimum;
        }
    };

    Ok((
        config,
        ImprovementTrace {
            start: initial,
            steps,
            stop,
        },
    ))
}
