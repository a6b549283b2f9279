//! Differential-testing harness: sweeps (k, n) grids, compares every closed
//! form against the brute-force oracle, and emits machine-readable reports.
//!
//! Reports are deterministic: rows are ordered by (k, n, quantity), cells
//! are computed independently (parallelism never reorders anything), and
//! floats are printed with 17 significant digits. Re-running a sweep with a
//! different worker count yields byte-identical output.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::distance::{diameter_formula, graph_stats};
use crate::formulas::{
    residual_formula, vertex_classes, vertex_closeness_formula_odd_odd, FormulaResult, VertexClass,
};
use crate::graph::{Graph, HararyParams, ParityCase};
use crate::oracle::{graph_closeness, residual_closeness};
use crate::{closeness_formula, Error, Result};

/// Hard ceiling on `|k_range| * |n_range|` unless
/// [`SweepConfig::allow_large`] is set.
pub const GRID_CELL_BUDGET: usize = 1_000_000;

/// Quantities a sweep can compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Closeness,
    Residual,
    Diameter,
    /// Per-class closeness values of the odd-odd case (apex, ring
    /// groups, RM); produces rows only for odd-k odd-n cells.
    VertexClasses,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [
        Quantity::Diameter,
        Quantity::Closeness,
        Quantity::Residual,
        Quantity::VertexClasses,
    ];

    fn name(self) -> &'static str {
        match self {
            Quantity::Closeness => "closeness",
            Quantity::Residual => "residual",
            Quantity::Diameter => "diameter",
            Quantity::VertexClasses => "vertex_classes",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one formula-vs-oracle comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellStatus {
    /// Covered and within tolerance.
    Ok,
    /// Covered but out of tolerance.
    Mismatch,
    /// No closed form for these parameters; informational, not a failure.
    NotCovered,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Ok => "Ok",
            CellStatus::Mismatch => "Mismatch",
            CellStatus::NotCovered => "NotCovered",
        })
    }
}

/// Sweep parameters. Ranges are inclusive; `(k, n)` combinations that are
/// not valid Harary parameters (`k < 2` or `k >= n`) are skipped, not
/// errors, so ranges can be written without parity bookkeeping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub k_range: (usize, usize),
    pub n_range: (usize, usize),
    /// Absolute comparison bound.
    pub tolerance: f64,
    pub quantities: Vec<Quantity>,
    /// Worker-count hint; 0 uses the ambient rayon pool.
    pub workers: usize,
    /// Permit grids beyond [`GRID_CELL_BUDGET`] cells.
    pub allow_large: bool,
}

impl Default for SweepConfig {
    /// The default grid (k in [2,10], n in [5,64]) exercises every covered
    /// dispatch branch of the closeness, residual, and diameter formulas.
    fn default() -> Self {
        Self {
            k_range: (2, 10),
            n_range: (5, 64),
            tolerance: 1e-9,
            quantities: Quantity::ALL.to_vec(),
            workers: 0,
            allow_large: false,
        }
    }
}

/// One formula-vs-oracle comparison, with enough context to re-derive it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub k: usize,
    pub n: usize,
    pub parity_case: ParityCase,
    /// Fired branch; `None` when not covered.
    pub theorem_id: Option<String>,
    pub quantity: Quantity,
    /// Closed-form diameter; `None` for k = 2.
    pub diam_formula: Option<u32>,
    /// BFS diameter.
    pub diam_bfs: u32,
    pub formula_value: Option<f64>,
    pub oracle_value: f64,
    pub abs_diff: Option<f64>,
    pub status: CellStatus,
}

/// A row that needs attention: either a Mismatch or a NotCovered marker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyRecord {
    pub k: usize,
    pub n: usize,
    pub quantity: Quantity,
    pub theorem_id: Option<String>,
    pub formula_value: Option<f64>,
    pub oracle_value: f64,
    pub abs_diff: Option<f64>,
    pub status: CellStatus,
}

impl From<&ComparisonRow> for DiscrepancyRecord {
    fn from(row: &ComparisonRow) -> Self {
        Self {
            k: row.k,
            n: row.n,
            quantity: row.quantity,
            theorem_id: row.theorem_id.clone(),
            formula_value: row.formula_value,
            oracle_value: row.oracle_value,
            abs_diff: row.abs_diff,
            status: row.status,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    /// Rows whose formula fired and agreed within tolerance.
    pub covered: usize,
    pub not_covered: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<ComparisonRow>,
    pub discrepancies: Vec<DiscrepancyRecord>,
    pub summary: SweepSummary,
}

/// Report output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

struct RowBuilder {
    k: usize,
    n: usize,
    parity_case: ParityCase,
    diam_formula: Option<u32>,
    diam_bfs: u32,
    tolerance: f64,
    perturb: f64,
}

impl RowBuilder {
    fn row(
        &self,
        quantity: Quantity,
        theorem_id: Option<String>,
        formula_value: Option<f64>,
        oracle_value: f64,
    ) -> ComparisonRow {
        let formula_value = formula_value.map(|v| v + self.perturb);
        let (abs_diff, status) = match formula_value {
            Some(f) => {
                let diff = (f - oracle_value).abs();
                let status = if diff <= self.tolerance {
                    CellStatus::Ok
                } else {
                    CellStatus::Mismatch
                };
                (Some(diff), status)
            }
            None => (None, CellStatus::NotCovered),
        };
        ComparisonRow {
            k: self.k,
            n: self.n,
            parity_case: self.parity_case,
            theorem_id,
            quantity,
            diam_formula: self.diam_formula,
            diam_bfs: self.diam_bfs,
            formula_value,
            oracle_value,
            abs_diff,
            status,
        }
    }

    fn formula_row(
        &self,
        quantity: Quantity,
        formula: &FormulaResult,
        oracle_value: f64,
    ) -> ComparisonRow {
        self.row(
            quantity,
            formula.trace().map(|t| t.theorem_id.clone()),
            formula.value(),
            oracle_value,
        )
    }
}

/// Evaluates one cell: builds the graph once, runs the requested oracle
/// quantities once, and compares each requested closed form. `perturb` is
/// the fault-injection hook used by the harness self-test.
fn evaluate_cell(
    params: HararyParams,
    quantities: &[Quantity],
    tolerance: f64,
    perturb: f64,
) -> Vec<ComparisonRow> {
    let (k, n) = (params.k(), params.n());
    let g = Graph::harary(params);
    let stats = graph_stats(&g);
    let diam_result = diameter_formula(params);
    let builder = RowBuilder {
        k,
        n,
        parity_case: params.parity_case(),
        diam_formula: diam_result.value().map(|v| v as u32),
        diam_bfs: stats.diameter,
        tolerance,
        perturb,
    };

    let wants = |q: Quantity| quantities.contains(&q);
    let closeness_report = (wants(Quantity::Closeness) || wants(Quantity::VertexClasses))
        .then(|| graph_closeness(&g));

    let mut rows = Vec::new();
    for quantity in Quantity::ALL {
        if !wants(quantity) {
            continue;
        }
        match quantity {
            Quantity::Diameter => {
                rows.push(builder.formula_row(
                    quantity,
                    &diam_result,
                    f64::from(stats.diameter),
                ));
            }
            Quantity::Closeness => {
                let report = closeness_report.as_ref().expect("computed above");
                rows.push(builder.formula_row(
                    quantity,
                    &closeness_formula(params),
                    report.total,
                ));
            }
            Quantity::Residual => {
                let report = residual_closeness(&g);
                rows.push(builder.formula_row(
                    quantity,
                    &residual_formula(params),
                    report.r_value,
                ));
            }
            Quantity::VertexClasses => {
                if params.parity_case() != ParityCase::OddKOddN {
                    continue;
                }
                let report = closeness_report.as_ref().expect("computed above");
                match vertex_classes(params) {
                    Ok(classes) => {
                        let diam = builder.diam_formula.expect("odd k >= 3 has a diameter");
                        let mut ordered = vec![VertexClass::Apex];
                        ordered.extend((0..=diam as usize - 3).map(VertexClass::RingGroup));
                        ordered.push(VertexClass::Rm);
                        for class in ordered {
                            let formula = vertex_closeness_formula_odd_odd(params, class)
                                .expect("class valid for these parameters");
                            // Compare against the worst member of the class.
                            let worst = report
                                .per_vertex
                                .iter()
                                .enumerate()
                                .filter(|(v, _)| classes[*v] == class)
                                .max_by(|a, b| {
                                    let da = (a.1 - formula).abs();
                                    let db = (b.1 - formula).abs();
                                    da.partial_cmp(&db).expect("finite closeness values")
                                })
                                .map(|(_, value)| *value)
                                .expect("classes are nonempty");
                            let id = match class {
                                VertexClass::Apex => "Thm2.8-eq1".to_owned(),
                                VertexClass::RingGroup(j) => format!("Thm2.8-eq2-ring{j}"),
                                VertexClass::Rm => "Thm2.8-eq3".to_owned(),
                            };
                            rows.push(builder.row(quantity, Some(id), Some(formula), worst));
                        }
                    }
                    Err(_) => {
                        // Odd-odd cell with diameter <= 2: no class formulas.
                        let mid = (n - 1) / 2;
                        rows.push(builder.row(quantity, None, None, report.per_vertex[mid]));
                    }
                }
            }
        }
    }
    rows
}

/// Compares every requested closed form for one cell; returns the rows that
/// need attention (Mismatch, plus informational NotCovered markers). An
/// empty result means every covered quantity agreed within tolerance.
pub fn verify_cell(params: HararyParams, cfg: &SweepConfig) -> Vec<DiscrepancyRecord> {
    evaluate_cell(params, &cfg.quantities, cfg.tolerance, 0.0)
        .iter()
        .filter(|row| row.status != CellStatus::Ok)
        .map(DiscrepancyRecord::from)
        .collect()
}

/// Fault-injection variant for harness self-tests: every covered formula
/// value is shifted by `perturb` before comparison.
#[doc(hidden)]
pub fn verify_cell_perturbed(
    params: HararyParams,
    cfg: &SweepConfig,
    perturb: f64,
) -> Vec<DiscrepancyRecord> {
    evaluate_cell(params, &cfg.quantities, cfg.tolerance, perturb)
        .iter()
        .filter(|row| row.status != CellStatus::Ok)
        .map(DiscrepancyRecord::from)
        .collect()
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Sweeps the configured grid. Cells run in parallel; row order is always
/// ascending (k, n), then the fixed quantity order of [`Quantity::ALL`].
pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let (k_lo, k_hi) = cfg.k_range;
    let (n_lo, n_hi) = cfg.n_range;
    if k_lo > k_hi {
        return Err(Error::EmptySweepRange { which: "k_range" });
    }
    if n_lo > n_hi {
        return Err(Error::EmptySweepRange { which: "n_range" });
    }
    if cfg.tolerance.is_nan() || cfg.tolerance <= 0.0 {
        return Err(Error::InvalidTolerance {
            tolerance: cfg.tolerance,
        });
    }
    let cells_in_grid = (k_hi - k_lo + 1).saturating_mul(n_hi - n_lo + 1);
    if cells_in_grid > GRID_CELL_BUDGET && !cfg.allow_large {
        return Err(Error::GridBudgetExceeded {
            cells: cells_in_grid,
            limit: GRID_CELL_BUDGET,
        });
    }

    let mut cells = Vec::new();
    for k in k_lo..=k_hi {
        for n in n_lo..=n_hi {
            if let Ok(params) = HararyParams::new(k, n) {
                cells.push(params);
            }
        }
    }

    let per_cell: Vec<Vec<ComparisonRow>> = with_pool(cfg.workers, || {
        cells
            .par_iter()
            .map(|&params| evaluate_cell(params, &cfg.quantities, cfg.tolerance, 0.0))
            .collect()
    })?;

    let rows: Vec<ComparisonRow> = per_cell.into_iter().flatten().collect();
    let mut summary = SweepSummary::default();
    for row in &rows {
        match row.status {
            CellStatus::Ok => summary.covered += 1,
            CellStatus::NotCovered => summary.not_covered += 1,
            CellStatus::Mismatch => summary.mismatches += 1,
        }
    }
    let discrepancies = rows
        .iter()
        .filter(|row| row.status != CellStatus::Ok)
        .map(DiscrepancyRecord::from)
        .collect();
    Ok(SweepReport {
        rows,
        discrepancies,
        summary,
    })
}

/// 17 significant digits: enough to reproduce any f64 exactly.
fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

fn fmt_opt_f64(value: Option<f64>) -> String {
    value.map(fmt_f64).unwrap_or_default()
}

/// Renders a report. CSV columns:
/// `k,n,parity_case,theorem_id,quantity,diam_formula,diam_bfs,formula_value,oracle_value,abs_diff,status`
/// with a header row, `\n` line endings, and floats at 17 significant
/// digits. JSON is the serde form of [`SweepReport`] and round-trips.
pub fn emit_report(report: &SweepReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from(
                "k,n,parity_case,theorem_id,quantity,diam_formula,diam_bfs,formula_value,oracle_value,abs_diff,status\n",
            );
            for row in &report.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    row.k,
                    row.n,
                    row.parity_case,
                    row.theorem_id.as_deref().unwrap_or(""),
                    row.quantity,
                    row.diam_formula.map(|d| d.to_string()).unwrap_or_default(),
                    row.diam_bfs,
                    fmt_opt_f64(row.formula_value),
                    fmt_f64(row.oracle_value),
                    fmt_opt_f64(row.abs_diff),
                    row.status,
                ));
            }
            out
        }
        ReportFormat::Json => serde_json::to_string(report).expect("report serialization"),
    }
}
