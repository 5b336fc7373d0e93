//! Small reference instances used across tests, benches and docs.

use crate::config::CellConfiguration;
use crate::matrix::IncidenceMatrix;

/// King & Nakornchai (1982) 5 machines × 7 parts.
pub fn king_nakornchai_5x7() -> IncidenceMatrix {
    IncidenceMatrix::from_bits(&[
        [0u8, 1, 0, 1, 1, 1, 0],
        [1, 0, 1, 0, 0, 0, 0],
        [1, 0, 1, 0, 0, 1, 1],
        [0, 1, 0, 1, 0, 1, 0],
        [1, 0, 0, 0, 1, 0, 1],
    ])
    .expect("valid reference matrix")
}

/// Best known two-cell layout of [`king_nakornchai_5x7`]:
/// {m1,m4} with {p2,p4,p5,p6}, {m2,m3,m5} with {p1,p3,p7}. Efficacy 14/19.
pub fn king_nakornchai_two_cells() -> CellConfiguration {
    CellConfiguration::new(2, vec![0, 1, 1, 0, 1], vec![1, 0, 1, 0, 0, 0, 1])
}

/// Three machines × five parts illustration of a block-diagonal rearrangement.
pub fn sample_3x5() -> IncidenceMatrix {
    IncidenceMatrix::from_bits(&[[0u8, 1, 1, 0, 1], [1, 0, 0, 1, 1], [0, 0, 1, 0, 1]])
        .expect("valid reference matrix")
}

/// {m1,m3} with {p2,p3,p5}, {m2} with {p1,p4}. Efficacy 7/9.
pub fn sample_3x5_two_cells() -> CellConfiguration {
    CellConfiguration::new(2, vec![0, 1, 0], vec![1, 0, 0, 1, 0])
}
