//! Grouping efficacy: τ = (E − E_e) / (E + E_v).

use serde::Serialize;

use crate::config::CellConfiguration;
use crate::matrix::IncidenceMatrix;
use crate::ratio::Ratio;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EfficacyBreakdown {
    /// E, every 1 in the matrix.
    pub total_ones: usize,
    /// E_e, 1s outside the diagonal blocks.
    pub exceptional: usize,
    /// E_v, 0s inside the diagonal blocks.
    pub voids: usize,
    pub efficacy: Ratio,
}

impl EfficacyBreakdown {
    fn from_counts(total_ones: usize, exceptional: usize, voids: usize) -> Self {
        EfficacyBreakdown {
            total_ones,
            exceptional,
            voids,
            efficacy: Ratio::new(
                (total_ones - exceptional) as u64,
                (total_ones + voids) as u64,
            ),
        }
    }

    /// 1s inside the diagonal blocks.
    pub fn ones_in_blocks(&self) -> usize {
        self.total_ones - self.exceptional
    }
}

/// E, the number of 1-entries.
pub fn count_ones(matrix: &IncidenceMatrix) -> usize {
    matrix.count_ones()
}

/// Grouping efficacy of `config` on `matrix`, after checking the
/// configuration is structurally valid.
pub fn efficacy(
    matrix: &IncidenceMatrix,
    config: &CellConfiguration,
) -> Result<EfficacyBreakdown, Error> {
    config
        .validate(matrix)
        .map_err(Error::InvalidConfiguration)?;
    Ok(efficacy_unchecked(matrix, config))
}

/// Same as [`efficacy`] without validation; indices must already be in range.
pub(crate) fn efficacy_unchecked(
    matrix: &IncidenceMatrix,
    config: &CellConfiguration,
) -> EfficacyBreakdown {
    let mut exceptional = 0;
    let mut voids = 0;
    for i in 0..matrix.machine_count() {
        let mc = config.machine_cell(i);
        for (j, &one) in matrix.row(i).iter().enumerate() {
            let inside = config.part_cell(j) == mc;
            match (one, inside) {
                (true, false) => exceptional += 1,
                (false, true) => voids += 1,
                _ => {}
            }
        }
    }
    EfficacyBreakdown::from_counts(matrix.count_ones(), exceptional, voids)
}
