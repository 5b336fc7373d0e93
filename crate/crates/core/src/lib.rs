//! Machine-part cell formation.
//!
//! Machines are grouped by Sorenson similarity and centroid-linkage
//! agglomerative clustering; parts are then assigned to the resulting cells
//! and reassigned one at a time while grouping efficacy improves.
//!
//! ```
//! use cellform::{fixtures, solve, Ratio, SolveParams};
//!
//! let report = solve(&fixtures::king_nakornchai_5x7(), &SolveParams::default()).unwrap();
//! assert_eq!(report.breakdown.efficacy, Ratio::new(14, 19));
//! ```

pub mod assignment;
pub mod clustering;
pub mod config;
pub mod efficacy;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod ratio;
pub mod similarity;
pub mod solver;

use thiserror::Error;

pub use assignment::{
    improve, initial_assignment, membership_index, ImprovementParams, ImprovementTrace, Membership,
    StopReason, TraceStep,
};
pub use clustering::{build_dendrogram, merge_level_update, LinkageTree, Merge};
pub use config::{CellConfiguration, Violation};
pub use efficacy::{count_ones, efficacy, EfficacyBreakdown};
pub use matrix::{IncidenceMatrix, MatrixError};
pub use ratio::Ratio;
pub use similarity::{similarity_matrix, sorenson_pair, SimilarityMatrix};
pub use solver::{solve, CutResult, SolveParams, SolveReport};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("invalid configuration: {}", join(.0))]
    InvalidConfiguration(Vec<Violation>),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0}")]
    Domain(String),
    #[error(
        "{machines}x{parts} instance exceeds the enumeration budget of {max_machines}x{max_parts}"
    )]
    OverBudget {
        machines: usize,
        parts: usize,
        max_machines: usize,
        max_parts: usize,
    },
    #[error("efficacy routes disagree: {0}")]
    OracleDisagreement(String),
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
