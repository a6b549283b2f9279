//! Harary and consecutive circulant graph analytics.
//!
//! Constructs the canonical k-connected Harary graphs `H_{k,n}` and the
//! consecutive circulant graphs `C_{n,[l]}`, computes Dangalchev closeness
//! (`C(i) = sum_{j!=i} 2^{-d(i,j)}`) and vertex residual closeness
//! (`R = min_v C_v`) two ways — by brute-force BFS and by closed-form
//! expressions — and differentially verifies every closed form against the
//! oracle across `(k, n)` parameter sweeps.
//!
//! Module map:
//!
//! * [`graph`] — graph construction and export.
//! * [`distance`] — BFS distances, eccentricities, and the closed-form
//!   diameter of `H_{k,n}`.
//! * [`oracle`] — brute-force closeness and residual closeness.
//! * [`formulas`] — closed forms with provenance traces; parameter regions
//!   the formulas do not reach are reported as
//!   [`formulas::FormulaResult::NotCoveredByPaper`], never guessed.
//! * [`verify`] — the differential sweep harness and its CSV/JSON reports.

#![forbid(unsafe_code)]

pub mod distance;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod verify;

pub use distance::{
    bfs_distances, bfs_excluding, diameter_formula, graph_stats, harary_diameter, DistanceRow,
    GraphStats,
};
pub use formulas::{
    circulant_closeness_formula, closeness_formula, residual_formula, residue_t, tail_sum,
    vertex_classes, vertex_closeness_formula_odd_odd, Coverage, FormulaResult, FormulaTrace,
    Parity, Residue, ResidueRule, VertexClass,
};
pub use graph::{ExportFormat, Graph, HararyParams, ParityCase};
pub use oracle::{
    closeness_after_removal, graph_closeness, residual_closeness, vertex_closeness,
    ClosenessReport, ResidualReport,
};
pub use verify::{
    emit_report, sweep, verify_cell, CellStatus, ComparisonRow, DiscrepancyRecord, Quantity,
    ReportFormat, SweepConfig, SweepReport, SweepSummary,
};

/// Errors reported by constructors and operations with parameter preconditions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid Harary parameters: require 2 <= k < n, got k={k}, n={n}")]
    InvalidHararyParams { k: usize, n: usize },
    #[error("invalid circulant parameters: require 1 <= l <= n/2 and n >= 1, got n={n}, l={l}")]
    InvalidCirculantParams { n: usize, l: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("source vertex {vertex} equals the removed vertex")]
    SourceEqualsRemoved { vertex: usize },
    #[error("edge ({u}, {v}) is invalid for a simple graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
    #[error("residue rule {rule} does not apply to k={k}, n={n}")]
    ResidueRuleMismatch { rule: &'static str, k: usize, n: usize },
    #[error("vertex class query invalid for k={k}, n={n}: {reason}")]
    InvalidVertexClass { k: usize, n: usize, reason: String },
    #[error("empty sweep range: {which}")]
    EmptySweepRange { which: &'static str },
    #[error("sweep tolerance must be positive, got {tolerance}")]
    InvalidTolerance { tolerance: f64 },
    #[error("sweep grid has {cells} cells, over the {limit}-cell budget; set allow_large to override")]
    GridBudgetExceeded { cells: usize, limit: usize },
    #[error("failed to build worker pool: {0}")]
    WorkerPool(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
