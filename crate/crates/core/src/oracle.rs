//! Exhaustive optimum over every machine partition and part assignment, for
//! checking the heuristic pipeline on small instances.

use std::ops::RangeInclusive;

use crate::config::CellConfiguration;
use crate::efficacy::efficacy_unchecked;
use crate::matrix::IncidenceMatrix;
use crate::ratio::Ratio;
use crate::Error;

pub const MAX_MACHINES: usize = 5;
pub const MAX_PARTS: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    pub optimum_efficacy: Ratio,
    pub optimal_configs: Vec<CellConfiguration>,
}

/// Best grouping efficacy over all partitions of the machines into `k`
/// cells, `k` in `cell_counts`, and all assignments of parts to those cells.
///
/// Each candidate is scored twice, by the library efficacy routine and by an
/// independent block-area count; any disagreement is reported as an error.
pub fn brute_force_optimum(
    matrix: &IncidenceMatrix,
    cell_counts: RangeInclusive<usize>,
) -> Result<BruteForceResult, Error> {
    let (m, n) = (matrix.machine_count(), matrix.part_count());
    if m > MAX_MACHINES || n > MAX_PARTS {
        return Err(Error::OverBudget {
            machines: m,
            parts: n,
            max_machines: MAX_MACHINES,
            max_parts: MAX_PARTS,
        });
    }
    let mut best: Option<Ratio> = None;
    let mut configs = Vec::new();

    for machine_cell in set_partitions(m) {
        let k = machine_cell.iter().max().map_or(0, |&c| c + 1);
        if !cell_counts.contains(&k) {
            continue;
        }
        let mut part_cell = vec![0usize; n];
        loop {
            let cfg = CellConfiguration::new(k, machine_cell.clone(), part_cell.clone());
            let tau = efficacy_unchecked(matrix, &cfg).efficacy;
            let recount = block_count_efficacy(matrix, &machine_cell, &part_cell, k);
            if tau != recount {
                return Err(Error::OracleDisagreement(format!(
                    "{cfg:?}: library {tau}, recount {recount}"
                )));
            }
            match best {
                Some(b) if tau < b => {}
                Some(b) if tau == b => configs.push(cfg),
                _ => {
                    best = Some(tau);
                    configs.clear();
                    configs.push(cfg);
                }
            }
            if !next_assignment(&mut part_cell, k) {
                break;
            }
        }
    }
    let optimum_efficacy = best.ok_or_else(|| {
        Error::Domain(format!(
            "no cell count in {}..={} fits {m} machines",
            cell_counts.start(),
            cell_counts.end()
        ))
    })?;
    Ok(BruteForceResult {
        optimum_efficacy,
        optimal_configs: configs,
    })
}

/// τ = inside / (E + area − inside), from per-cell block sizes.
fn block_count_efficacy(
    matrix: &IncidenceMatrix,
    machine_cell: &[usize],
    part_cell: &[usize],
    k: usize,
) -> Ratio {
    let mut rows = vec![0u64; k];
    let mut cols = vec![0u64; k];
    for &c in machine_cell {
        rows[c] += 1;
    }
    for &c in part_cell {
        cols[c] += 1;
    }
    let area: u64 = rows.iter().zip(&cols).map(|(r, c)| r * c).sum();
    let mut total = 0u64;
    let mut inside = 0u64;
    for (i, &mc) in machine_cell.iter().enumerate() {
        for (j, &pc) in part_cell.iter().enumerate() {
            if matrix.get(i, j) {
                total += 1;
                inside += u64::from(mc == pc);
            }
        }
    }
    Ratio::new(inside, total + area - inside)
}

/// Every set partition of `0..m` as a restricted growth string.
fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; m];
    fn rec(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for c in 0..=max + 1 {
            rgs[pos] = c;
            rec(pos + 1, max.max(c), rgs, out);
        }
    }
    if m > 0 {
        rec(1, 0, &mut rgs, &mut out);
    }
    out
}

fn next_assignment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
