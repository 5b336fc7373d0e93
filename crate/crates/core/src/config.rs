//! Machine cells, part families, and their structural checks.

use std::fmt;

use serde::Serialize;

use crate::matrix::IncidenceMatrix;

/// Partition of the machines into `cell_count` cells plus the cell each part
/// is assigned to. Cell, machine and part indices are 0-based.
///
/// Construction does not check anything; call [`CellConfiguration::validate`]
/// (or go through an operation that does) before trusting the indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CellConfiguration {
    cell_count: usize,
    machine_cell: Vec<usize>,
    part_cell: Vec<usize>,
}

/// A broken invariant, located by 1-based machine/part/cell number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoCells,
    TooManyCells {
        cells: usize,
        machines: usize,
    },
    MachineCountMismatch {
        expected: usize,
        found: usize,
    },
    PartCountMismatch {
        expected: usize,
        found: usize,
    },
    MachineCellOutOfRange {
        machine: usize,
        cell: usize,
        cells: usize,
    },
    PartCellOutOfRange {
        part: usize,
        cell: usize,
        cells: usize,
    },
    EmptyCell {
        cell: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NoCells => write!(f, "configuration has no cells"),
            Violation::TooManyCells { cells, machines } => {
                write!(f, "{cells} cells for only {machines} machines")
            }
            Violation::MachineCountMismatch { expected, found } => write!(
                f,
                "configuration covers {found} machines, matrix has {expected}"
            ),
            Violation::PartCountMismatch { expected, found } => {
                write!(
                    f,
                    "configuration covers {found} parts, matrix has {expected}"
                )
            }
            Violation::MachineCellOutOfRange {
                machine,
                cell,
                cells,
            } => write!(
                f,
                "machine {machine}: cell index out of range ({cell} not in 1..={cells})"
            ),
            Violation::PartCellOutOfRange { part, cell, cells } => write!(
                f,
                "part {part}: cell index out of range ({cell} not in 1..={cells})"
            ),
            Violation::EmptyCell { cell } => write!(f, "cell {cell} has no machines"),
        }
    }
}

impl CellConfiguration {
    pub fn new(cell_count: usize, machine_cell: Vec<usize>, part_cell: Vec<usize>) -> Self {
        CellConfiguration {
            cell_count,
            machine_cell,
            part_cell,
        }
    }

    /// Builds a configuration from explicit machine cells; part `j` goes to
    /// `part_cell[j]`.
    pub fn from_cells(machine_count: usize, cells: &[Vec<usize>], part_cell: Vec<usize>) -> Self {
        let mut machine_cell = vec![usize::MAX; machine_count];
        for (c, members) in cells.iter().enumerate() {
            for &i in members {
                if let Some(slot) = machine_cell.get_mut(i) {
                    *slot = c;
                }
            }
        }
        CellConfiguration::new(cells.len(), machine_cell, part_cell)
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }

    pub fn machine_cell(&self, machine: usize) -> usize {
        self.machine_cell[machine]
    }

    pub fn part_cell(&self, part: usize) -> usize {
        self.part_cell[part]
    }

    pub fn machine_cells(&self) -> &[usize] {
        &self.machine_cell
    }

    pub fn part_cells(&self) -> &[usize] {
        &self.part_cell
    }

    /// Machines of `cell`, ascending.
    pub fn machines_in(&self, cell: usize) -> Vec<usize> {
        members(&self.machine_cell, cell)
    }

    /// Part family of `cell`, ascending.
    pub fn parts_in(&self, cell: usize) -> Vec<usize> {
        members(&self.part_cell, cell)
    }

    pub(crate) fn set_part_cell(&mut self, part: usize, cell: usize) {
        self.part_cell[part] = cell;
    }

    /// Every broken invariant against `matrix`; empty means valid.
    pub fn violations(&self, matrix: &IncidenceMatrix) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.cell_count;
        if k == 0 {
            out.push(Violation::NoCells);
        }
        if k > matrix.machine_count() {
            out.push(Violation::TooManyCells {
                cells: k,
                machines: matrix.machine_count(),
            });
        }
        if self.machine_cell.len() != matrix.machine_count() {
            out.push(Violation::MachineCountMismatch {
                expected: matrix.machine_count(),
                found: self.machine_cell.len(),
            });
        }
        if self.part_cell.len() != matrix.part_count() {
            out.push(Violation::PartCountMismatch {
                expected: matrix.part_count(),
                found: self.part_cell.len(),
            });
        }
        let mut sizes = vec![0usize; k];
        for (i, &c) in self.machine_cell.iter().enumerate() {
            match sizes.get_mut(c) {
                Some(n) => *n += 1,
                None => out.push(Violation::MachineCellOutOfRange {
                    machine: i + 1,
                    cell: c.saturating_add(1),
                    cells: k,
                }),
            }
        }
        for (j, &c) in self.part_cell.iter().enumerate() {
            if c >= k {
                out.push(Violation::PartCellOutOfRange {
                    part: j + 1,
                    cell: c.saturating_add(1),
                    cells: k,
                });
            }
        }
        for (c, &n) in sizes.iter().enumerate() {
            if n == 0 {
                out.push(Violation::EmptyCell { cell: c + 1 });
            }
        }
        out
    }

    /// `Ok(())` iff no invariant of the configuration (or the matrix, which
    /// holds its own at construction) is violated.
    pub fn validate(&self, matrix: &IncidenceMatrix) -> Result<(), Vec<Violation>> {
        let v = self.violations(matrix);
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }
}

fn members(assignment: &[usize], cell: usize) -> Vec<usize> {
    assignment
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == cell)
        .map(|(i, _)| i)
        .collect()
}
