//! `harary`: generate Harary and consecutive circulant graphs, compute
//! Dangalchev closeness / vertex residual closeness / diameter by closed
//! form and by brute force, and differentially verify the formulas over
//! (k, n) grids.
//!
//! Exit status: 0 on success, 1 when a sweep or verify run finds at least
//! one Mismatch, 2 on invalid arguments. `csv` and `json` outputs are
//! stable contracts; `table` is for eyes only.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use harary_core::{
    circulant_closeness_formula, closeness_formula, diameter_formula, emit_report,
    graph_closeness, graph_stats, residual_closeness, residual_formula, sweep, verify_cell,
    CellStatus, ExportFormat, FormulaResult, FormulaTrace, Graph, HararyParams, Quantity,
    ReportFormat, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "harary",
    version,
    about = "Harary graph closeness analytics: generation, metrics, and formula-vs-oracle verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph: H_{k,n} with --k, or C_{n,[l]} with --l
    Gen(GenArgs),
    /// Dangalchev closeness (Harary with --k, circulant with --l)
    Closeness(ClosenessArgs),
    /// Vertex residual closeness of H_{k,n}
    Residual(MetricArgs),
    /// Diameter of H_{k,n}
    Diameter(MetricArgs),
    /// Differential sweep over a (k, n) grid
    Sweep(SweepArgs),
    /// Differentially verify a single (k, n) cell
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Connectivity parameter of H_{k,n} (2 <= k < n)
    #[arg(long, conflicts_with = "l")]
    k: Option<usize>,
    /// Vertex count
    #[arg(long)]
    n: usize,
    /// Step bound of C_{n,[l]} (1 <= l <= n/2)
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_enum, default_value_t = GenFormat::Edgelist)]
    format: GenFormat,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClosenessArgs {
    /// Connectivity parameter of H_{k,n}
    #[arg(long, conflicts_with = "l")]
    k: Option<usize>,
    #[arg(long)]
    n: usize,
    /// Step bound of C_{n,[l]}
    #[arg(long)]
    l: Option<usize>,
    #[command(flatten)]
    common: MetricCommon,
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    common: MetricCommon,
}

#[derive(Args)]
struct MetricCommon {
    /// Which side(s) to compute
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
    #[arg(long, value_enum, default_value_t = MetricFormat::Table)]
    format: MetricFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker-count hint for the oracle (0 = automatic)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Inclusive k interval, "lo:hi"
    #[arg(long, value_parser = parse_range, default_value = "2:10")]
    k_range: (usize, usize),
    /// Inclusive n interval, "lo:hi"
    #[arg(long, value_parser = parse_range, default_value = "5:64")]
    n_range: (usize, usize),
    /// Comma-separated subset of closeness,residual,diameter,vertex-classes
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = [QuantityArg::Diameter, QuantityArg::Closeness,
                              QuantityArg::Residual, QuantityArg::VertexClasses])]
    quantities: Vec<QuantityArg>,
    /// Absolute comparison tolerance
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = ReportFmt::Csv)]
    format: ReportFmt,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Permit grids beyond the cell budget
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = [QuantityArg::Diameter, QuantityArg::Closeness,
                              QuantityArg::Residual, QuantityArg::VertexClasses])]
    quantities: Vec<QuantityArg>,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = VerifyFormat::Table)]
    format: VerifyFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    Edgelist,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFmt {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityArg {
    Closeness,
    Residual,
    Diameter,
    VertexClasses,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Quantity {
        match q {
            QuantityArg::Closeness => Quantity::Closeness,
            QuantityArg::Residual => Quantity::Residual,
            QuantityArg::Diameter => Quantity::Diameter,
            QuantityArg::VertexClasses => Quantity::VertexClasses,
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected \"lo:hi\", got {s:?}"))?;
    let lo = lo.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<usize>().map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

/// One-line diagnostic on stderr, exit 2.
fn fail(message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn write_output(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, String> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| e.to_string())?;
    Ok(pool.install(f))
}

/// What a metric subcommand computed, in its JSON shape.
#[derive(Serialize)]
struct MetricOutput {
    quantity: &'static str,
    k: Option<usize>,
    l: Option<usize>,
    n: usize,
    method: &'static str,
    coverage: Option<&'static str>,
    theorem_id: Option<String>,
    formula_value: Option<f64>,
    oracle_value: Option<f64>,
    trace: Option<FormulaTrace>,
}

impl MetricOutput {
    fn new(quantity: &'static str, method: Method, n: usize) -> Self {
        Self {
            quantity,
            k: None,
            l: None,
            n,
            method: match method {
                Method::Formula => "formula",
                Method::Oracle => "oracle",
                Method::Both => "both",
            },
            coverage: None,
            theorem_id: None,
            formula_value: None,
            oracle_value: None,
            trace: None,
        }
    }

    fn set_formula(&mut self, result: &FormulaResult) {
        match result {
            FormulaResult::Covered { value, trace } => {
                self.coverage = Some("Covered");
                self.formula_value = Some(*value);
                self.theorem_id = Some(trace.theorem_id.clone());
                self.trace = Some(trace.clone());
            }
            FormulaResult::NotCoveredByPaper => {
                self.coverage = Some("NotCoveredByPaper");
            }
        }
    }

    fn render(&self, format: MetricFormat) -> String {
        match format {
            MetricFormat::Json => serde_json::to_string(self).expect("metric serialization"),
            MetricFormat::Table => {
                let mut lines = Vec::new();
                if let Some(coverage) = self.coverage {
                    match self.formula_value {
                        Some(v) => lines.push(format!(
                            "formula   {v}   [{}]",
                            self.theorem_id.as_deref().unwrap_or("")
                        )),
                        None => lines.push(format!("formula   ({coverage})")),
                    }
                }
                if let Some(v) = self.oracle_value {
                    lines.push(format!("oracle    {v}"));
                }
                // Single-method calls print the bare value.
                if lines.len() == 1 {
                    let only = self
                        .formula_value
                        .or(self.oracle_value)
                        .map(|v| v.to_string());
                    if let Some(value) = only {
                        return value;
                    }
                }
                lines.join("\n")
            }
        }
    }
}

fn run_gen(args: GenArgs) -> Result<(), String> {
    let graph = match (args.k, args.l) {
        (Some(k), None) => {
            let params = HararyParams::new(k, args.n).map_err(|e| e.to_string())?;
            Graph::harary(params)
        }
        (None, Some(l)) => Graph::circulant(args.n, l).map_err(|e| e.to_string())?,
        _ => return Err("exactly one of --k or --l is required".to_owned()),
    };
    let format = match args.format {
        GenFormat::Edgelist => ExportFormat::EdgeList,
        GenFormat::Dot => ExportFormat::Dot,
        GenFormat::Json => ExportFormat::Json,
    };
    write_output(&graph.export(format), args.out.as_deref()).map_err(|e| e.to_string())
}

fn run_closeness(args: ClosenessArgs) -> Result<(), String> {
    let common = &args.common;
    let mut output = MetricOutput::new("closeness", common.method, args.n);
    match (args.k, args.l) {
        (Some(k), None) => {
            output.k = Some(k);
            let params = HararyParams::new(k, args.n).map_err(|e| e.to_string())?;
            if common.method != Method::Oracle {
                output.set_formula(&closeness_formula(params));
            }
            if common.method != Method::Formula {
                let total = with_jobs(common.jobs, || {
                    graph_closeness(&Graph::harary(params)).total
                })?;
                output.oracle_value = Some(total);
            }
        }
        (None, Some(l)) => {
            output.l = Some(l);
            if common.method != Method::Oracle {
                let result = circulant_closeness_formula(args.n, l).map_err(|e| e.to_string())?;
                output.set_formula(&result);
            }
            if common.method != Method::Formula {
                let graph = Graph::circulant(args.n, l).map_err(|e| e.to_string())?;
                let total = with_jobs(common.jobs, || graph_closeness(&graph).total)?;
                output.oracle_value = Some(total);
            }
        }
        _ => return Err("exactly one of --k or --l is required".to_owned()),
    }
    write_output(&output.render(common.format), common.out.as_deref()).map_err(|e| e.to_string())
}

#[derive(Clone, Copy)]
enum HararyMetric {
    Residual,
    Diameter,
}

impl HararyMetric {
    fn name(self) -> &'static str {
        match self {
            HararyMetric::Residual => "residual",
            HararyMetric::Diameter => "diameter",
        }
    }

    fn formula(self, params: HararyParams) -> FormulaResult {
        match self {
            HararyMetric::Residual => residual_formula(params),
            HararyMetric::Diameter => diameter_formula(params),
        }
    }

    fn oracle(self, graph: &Graph) -> f64 {
        match self {
            HararyMetric::Residual => residual_closeness(graph).r_value,
            HararyMetric::Diameter => f64::from(graph_stats(graph).diameter),
        }
    }
}

fn run_harary_metric(metric: HararyMetric, args: MetricArgs) -> Result<(), String> {
    let common = &args.common;
    let params = HararyParams::new(args.k, args.n).map_err(|e| e.to_string())?;
    let mut output = MetricOutput::new(metric.name(), common.method, args.n);
    output.k = Some(args.k);
    if common.method != Method::Oracle {
        output.set_formula(&metric.formula(params));
    }
    if common.method != Method::Formula {
        let graph = Graph::harary(params);
        let value = with_jobs(common.jobs, || metric.oracle(&graph))?;
        output.oracle_value = Some(value);
    }
    write_output(&output.render(common.format), common.out.as_deref()).map_err(|e| e.to_string())
}

fn run_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let cfg = SweepConfig {
        k_range: args.k_range,
        n_range: args.n_range,
        tolerance: args.tolerance,
        quantities: args.quantities.iter().map(|&q| q.into()).collect(),
        workers: args.jobs,
        allow_large: args.force,
    };
    let report = sweep(&cfg).map_err(|e| e.to_string())?;
    let text = match args.format {
        ReportFmt::Csv => emit_report(&report, ReportFormat::Csv),
        ReportFmt::Json => emit_report(&report, ReportFormat::Json),
        ReportFmt::Table => {
            let mut lines = vec![format!(
                "rows {}   covered {}   not-covered {}   mismatches {}",
                report.rows.len(),
                report.summary.covered,
                report.summary.not_covered,
                report.summary.mismatches
            )];
            for d in &report.discrepancies {
                if d.status == CellStatus::Mismatch {
                    lines.push(format!(
                        "MISMATCH k={} n={} {} [{}]: formula {:?} oracle {} ",
                        d.k,
                        d.n,
                        d.quantity,
                        d.theorem_id.as_deref().unwrap_or(""),
                        d.formula_value,
                        d.oracle_value
                    ));
                }
            }
            lines.join("\n")
        }
    };
    write_output(&text, args.out.as_deref()).map_err(|e| e.to_string())?;
    if report.summary.mismatches > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let params = HararyParams::new(args.k, args.n).map_err(|e| e.to_string())?;
    let cfg = SweepConfig {
        tolerance: args.tolerance,
        quantities: args.quantities.iter().map(|&q| q.into()).collect(),
        ..SweepConfig::default()
    };
    let records = verify_cell(params, &cfg);
    let mismatches = records
        .iter()
        .filter(|r| r.status == CellStatus::Mismatch)
        .count();
    let text = match args.format {
        VerifyFormat::Json => serde_json::to_string(&records).expect("records serialization"),
        VerifyFormat::Table => {
            if records.is_empty() {
                format!(
                    "H_{{{},{}}}: all covered quantities agree within {:e}",
                    args.k, args.n, args.tolerance
                )
            } else {
                records
                    .iter()
                    .map(|r| {
                        format!(
                            "{} {}: formula {} oracle {}",
                            r.quantity,
                            r.status,
                            r.formula_value
                                .map_or_else(|| "-".to_owned(), |v| v.to_string()),
                            r.oracle_value
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
    };
    write_output(&text, args.out.as_deref()).map_err(|e| e.to_string())?;
    if mismatches > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => run_gen(args).map(|()| ExitCode::SUCCESS),
        Command::Closeness(args) => run_closeness(args).map(|()| ExitCode::SUCCESS),
        Command::Residual(args) => {
            run_harary_metric(HararyMetric::Residual, args).map(|()| ExitCode::SUCCESS)
        }
        Command::Diameter(args) => {
            run_harary_metric(HararyMetric::Diameter, args).map(|()| ExitCode::SUCCESS)
        }
        Command::Sweep(args) => run_sweep(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => fail(message),
    }
}
