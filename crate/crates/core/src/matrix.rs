//! Binary machine-part incidence matrix.
//!
//! Rows are machines, columns are parts. An entry is set when the machine
//! takes part in the part's routing. Indices are 0-based in the API and
//! 1-based (`m1`, `p1`, ...) in every message a user sees.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least 2 machines and 2 parts, got {machines}x{parts}")]
    TooSmall { machines: usize, parts: usize },
    #[error("machine {machine} has {found} entries, expected {expected}")]
    RaggedRow {
        machine: usize,
        expected: usize,
        found: usize,
    },
    #[error("machine {0} processes no parts")]
    EmptyMachine(usize),
    #[error("part {0} visits no machines")]
    EmptyPart(usize),
}

/// An m×n 0/1 matrix with no all-zero row or column, m ≥ 2, n ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    machines: usize,
    parts: usize,
    entries: Vec<bool>,
}

impl IncidenceMatrix {
    /// Builds a matrix from row vectors. Error messages number machines and
    /// parts from 1.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let machines = rows.len();
        let parts = rows.first().map_or(0, |r| r.as_ref().len());
        if machines < 2 || parts < 2 {
            return Err(MatrixError::TooSmall { machines, parts });
        }
        let mut entries = Vec::with_capacity(machines * parts);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != parts {
                return Err(MatrixError::RaggedRow {
                    machine: i + 1,
                    expected: parts,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        let matrix = IncidenceMatrix {
            machines,
            parts,
            entries,
        };
        if let Some(i) = (0..machines).find(|&i| matrix.machine_load(i) == 0) {
            return Err(MatrixError::EmptyMachine(i + 1));
        }
        if let Some(j) = (0..parts).find(|&j| matrix.part_load(j) == 0) {
            return Err(MatrixError::EmptyPart(j + 1));
        }
        Ok(matrix)
    }

    /// Convenience constructor from 0/1 integer rows; any non-zero is a 1.
    pub fn from_bits<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&b| b != 0).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn machine_count(&self) -> usize {
        self.machines
    }

    pub fn part_count(&self) -> usize {
        self.parts
    }

    #[inline]
    pub fn get(&self, machine: usize, part: usize) -> bool {
        self.entries[machine * self.parts + part]
    }

    pub fn row(&self, machine: usize) -> &[bool] {
        &self.entries[machine * self.parts..(machine + 1) * self.parts]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> + '_ {
        self.entries.chunks(self.parts)
    }

    /// Number of parts the machine processes.
    pub fn machine_load(&self, machine: usize) -> usize {
        self.row(machine).iter().filter(|&&b| b).count()
    }

    /// Number of machines the part visits (n_j).
    pub fn part_load(&self, part: usize) -> usize {
        (0..self.machines).filter(|&i| self.get(i, part)).count()
    }

    /// Total number of 1-entries (E).
    pub fn count_ones(&self) -> usize {
        self.entries.iter().filter(|&&b| b).count()
    }

    /// Reorders rows and columns: row `i` of the result is row
    /// `machine_order[i]` of `self`, likewise for parts.
    ///
    /// Panics unless both orders are permutations.
    pub fn permuted(&self, machine_order: &[usize], part_order: &[usize]) -> Self {
        assert!(is_permutation(machine_order, self.machines));
        assert!(is_permutation(part_order, self.parts));
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in machine_order {
            entries.extend(part_order.iter().map(|&j| self.get(i, j)));
        }
        IncidenceMatrix {
            machines: self.machines,
            parts: self.parts,
            entries,
        }
    }
}

fn is_permutation(order: &[usize], len: usize) -> bool {
    let mut seen = vec![false; len];
    order.len() == len
        && order
            .iter()
            .all(|&i| i < len && !std::mem::replace(&mut seen[i], true))
}

impl Serialize for IncidenceMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<u8>> = self
            .rows()
            .map(|r| r.iter().map(|&b| u8::from(b)).collect())
            .collect();
        let mut st = s.serialize_struct("IncidenceMatrix", 3)?;
        st.serialize_field("machines", &self.machines)?;
        st.serialize_field("parts", &self.parts)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

impl fmt::Display for IncidenceMatrix {
    /// Canonical text form, the same layout `io::parse_incidence` reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.machines, self.parts)?;
        for row in self.rows() {
            let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_shapes() {
        assert_eq!(
            IncidenceMatrix::from_bits(&[[1u8, 1]]),
            Err(MatrixError::TooSmall {
                machines: 1,
                parts: 2
            })
        );
        assert_eq!(
            IncidenceMatrix::from_bits(&[vec![1u8, 0], vec![1]]),
            Err(MatrixError::RaggedRow {
                machine: 2,
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn rejects_empty_rows_and_columns() {
        let err = IncidenceMatrix::from_bits(&[[1u8, 0], [0, 0]]).unwrap_err();
        assert_eq!(err.to_string(), "machine 2 processes no parts");
        let err = IncidenceMatrix::from_bits(&[[1u8, 0, 1], [1, 0, 0]]).unwrap_err();
        assert_eq!(err.to_string(), "part 2 visits no machines");
    }

    #[test]
    fn counts_and_loads() {
        let m = IncidenceMatrix::from_bits(&[[1u8, 1], [1, 1]]).unwrap();
        assert_eq!(m.count_ones(), 4);
        assert_eq!(m.part_load(0), 2);
        assert_eq!(m.machine_load(1), 2);
    }

    #[test]
    fn permutation_moves_entries() {
        let m = IncidenceMatrix::from_bits(&[[1u8, 0, 0], [0, 1, 1]]).unwrap();
        let p = m.permuted(&[1, 0], &[2, 0, 1]);
        assert_eq!(p.row(0), &[true, false, true]);
        assert_eq!(p.row(1), &[false, true, false]);
    }
}
