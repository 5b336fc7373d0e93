//! Sorenson (Dice) similarity between machines.

use serde::Serialize;

use crate::matrix::IncidenceMatrix;
use crate::Error;

/// Symmetric m×m machine similarity table with a unit diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityMatrix {
    size: usize,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    /// Builds a matrix from a full square table. Fails unless the table is
    /// square, symmetric, has a unit diagonal and holds values in [0, 1].
    pub fn from_square(rows: &[Vec<f64>]) -> Result<Self, Error> {
        let size = rows.len();
        if size < 2 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::Dimension(format!(
                "similarity table must be square with at least 2 rows, got {size} rows"
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 1.0 {
                return Err(Error::Domain(format!("similarity ({i},{i}) is not 1")));
            }
            for (j, &v) in row.iter().enumerate().take(i) {
                if v != rows[j][i] || !(0.0..=1.0).contains(&v) {
                    return Err(Error::Domain(format!(
                        "similarity ({},{}) must be symmetric and in [0, 1]",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(SimilarityMatrix {
            size,
            values: rows.concat(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size + j]
    }

    /// Largest off-diagonal value.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for i in 0..self.size {
            for j in 0..i {
                best = best.max(self.get(i, j));
            }
        }
        best
    }
}

/// 2a / (2a + b + c): a parts on both machines, b only on the first, c only
/// on the second. Zero when the machines share no part.
pub fn sorenson_pair(first: &[bool], second: &[bool]) -> Result<f64, Error> {
    if first.len() != second.len() {
        return Err(Error::Dimension(format!(
            "part vectors differ in length: {} vs {}",
            first.len(),
            second.len()
        )));
    }
    let (mut both, mut only_first, mut only_second) = (0u32, 0u32, 0u32);
    for (&x, &y) in first.iter().zip(second) {
        match (x, y) {
            (true, true) => both += 1,
            (true, false) => only_first += 1,
            (false, true) => only_second += 1,
            (false, false) => {}
        }
    }
    if both == 0 {
        return Ok(0.0);
    }
    Ok(f64::from(2 * both) / f64::from(2 * both + only_first + only_second))
}

pub fn similarity_matrix(matrix: &IncidenceMatrix) -> SimilarityMatrix {
    let m = matrix.machine_count();
    let mut values = vec![0.0; m * m];
    for i in 0..m {
        values[i * m + i] = 1.0;
        for j in 0..i {
            let s = sorenson_pair(matrix.row(i), matrix.row(j))
                .expect("rows of one matrix share a length");
            values[i * m + j] = s;
            values[j * m + i] = s;
        }
    }
    SimilarityMatrix { size: m, values }
}
