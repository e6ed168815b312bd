//! `analyze`, `verify` and `sweep`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use pathinfo_core::duality::DualityReport;
use pathinfo_core::sampling::{Cell, DimRange, IntRange, PriorMode, SweepSpec, RNG_ALGORITHM};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{parse_range, Args, Command, Format};
use crate::config_file::{self, ConfigFile};
use crate::families::{family_points, Family, FamilySpec};
use crate::report::{self, fmt_float, JsonRow, TOOL};
use crate::{CliError, Outcome};

const MAX_PRINTED_VIOLATIONS: usize = 5;

pub fn run(args: &Args, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if !(args.tolerance > 0.0 && args.tolerance.is_finite()) {
        return Err(CliError::Usage("--tolerance must be positive".into()));
    }
    match args.command {
        Command::Analyze => analyze(args, out),
        Command::Verify => verify(args, out),
        Command::Sweep => sweep(args, out),
    }
}

fn write_text(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let (result, name) = match path {
        Some(p) => (fs::write(p, text), p.display().to_string()),
        None => (out.write_all(text.as_bytes()), "<stdout>".to_string()),
    };
    result.map_err(|source| CliError::Io { path: name, source })
}

#[derive(Serialize)]
struct RowsDocument<'a> {
    header: &'a str,
    seed: u64,
    rng: &'static str,
    rows: Vec<JsonRow<'a>>,
}

fn rows_json<'a>(
    header: &'a str,
    seed: u64,
    rows: impl Iterator<Item = (&'a str, &'a DualityReport)>,
) -> String {
    let doc = RowsDocument {
        header,
        seed,
        rng: RNG_ALGORITHM,
        rows: rows
            .map(|(param, report)| JsonRow { param, report })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("rows serialize") + "\n"
}

fn prior_mode(args: &Args) -> Result<PriorMode, CliError> {
    if args.uniform_priors {
        return Ok(PriorMode::Uniform);
    }
    if !(args.alpha > 0.0 && args.alpha.is_finite()) {
        return Err(CliError::Usage("--alpha must be positive".into()));
    }
    Ok(PriorMode::Dirichlet(args.alpha))
}

fn prior_label(mode: PriorMode) -> String {
    match mode {
        PriorMode::Uniform => "uniform".into(),
        PriorMode::Dirichlet(a) => format!("dirichlet({a})"),
    }
}

fn analyze(args: &Args, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let input = args
        .input
        .as_deref()
        .ok_or_else(|| CliError::Usage("analyze needs --input".into()))?;
    let config = config_file::read_config(input)?;
    let report = report::analyze(&config, args.restarts(), args.seed, args.tolerance)?;
    let text = match args.format() {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Csv => report::csv_document(
            &format!(
                "{TOOL} command=analyze seed={} rng={RNG_ALGORITHM} restarts={}",
                args.seed,
                args.restarts()
            ),
            [report::csv_row(
                &input.display().to_string(),
                &report.duality,
            )],
        ),
    };
    write_text(args.output.as_deref(), &text, out)?;
    Ok(if report.holds {
        Outcome::Holds
    } else {
        Outcome::Violated
    })
}

/// Worst gaps within one (N, d) cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub d: usize,
    pub configs: usize,
    pub worst_gap_l1: f64,
    pub worst_gap_entropic: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub cell: Cell,
    pub sample: usize,
    pub report: DualityReport,
}

impl VerifyRow {
    /// Position in the sweep, used as the CSV parameter.
    pub fn index(&self, samples: usize) -> usize {
        self.cell.index * samples + self.sample
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRun {
    pub rows: Vec<VerifyRow>,
    pub cells: Vec<CellSummary>,
}

impl VerifyRun {
    pub fn violations(&self, tolerance: f64) -> impl Iterator<Item = &VerifyRow> {
        self.rows.iter().filter(move |r| !r.report.holds(tolerance))
    }

    pub fn worst_gap_l1(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| c.worst_gap_l1)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn worst_gap_entropic(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| c.worst_gap_entropic)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates every configuration of `spec` in parallel. Rows come back in (cell,
/// sample) order whatever the scheduling.
pub fn run_verify(spec: &SweepSpec, restarts: usize) -> pathinfo_core::Result<VerifyRun> {
    spec.validate()?;
    let cells = spec.cells();
    let jobs: Vec<(Cell, usize)> = cells
        .iter()
        .flat_map(|&c| (0..spec.samples).map(move |s| (c, s)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(cell, sample)| {
            let config = spec.config(&cell, sample)?;
            Ok(VerifyRow {
                cell,
                sample,
                report: report::evaluate(&config, restarts, spec.seed)?,
            })
        })
        .collect::<pathinfo_core::Result<Vec<_>>>()?;
    let cells = cells
        .iter()
        .map(|c| {
            let mine = &rows[c.index * spec.samples..(c.index + 1) * spec.samples];
            CellSummary {
                n: c.n,
                d: c.d,
                configs: mine.len(),
                worst_gap_l1: mine
                    .iter()
                    .map(|r| r.report.gap_l1)
                    .fold(f64::INFINITY, f64::min),
                worst_gap_entropic: mine
                    .iter()
                    .map(|r| r.report.gap_entropic)
                    .fold(f64::INFINITY, f64::min),
            }
        })
        .collect();
    Ok(VerifyRun { rows, cells })
}

pub fn sweep_spec(args: &Args) -> Result<SweepSpec, CliError> {
    let defaults = SweepSpec::default();
    let spec = SweepSpec {
        n_range: match &args.n_range {
            Some(t) => parse_range(t)?,
            None => defaults.n_range,
        },
        d_range: match &args.d_range {
            Some(t) => DimRange::Fixed(parse_range(t)?),
            None => DimRange::UpToTwiceN,
        },
        samples: args.samples,
        seed: args.seed,
        prior_mode: prior_mode(args)?,
    };
    spec.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(spec)
}

#[derive(Serialize)]
struct ViolationRecord<'a> {
    n: usize,
    d: usize,
    sample: usize,
    seed: u64,
    report: &'a DualityReport,
    config: ConfigFile,
}

fn verify(args: &Args, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let spec = sweep_spec(args)?;
    let restarts = args.restarts();
    let run = run_verify(&spec, restarts)?;
    let d_label = match spec.d_range {
        DimRange::UpToTwiceN => "1..2N".to_string(),
        DimRange::Fixed(r) => format!("{}..{}", r.lo, r.hi),
    };
    let header = format!(
        "{TOOL} command=verify seed={} rng={RNG_ALGORITHM} n={}..{} d={d_label} samples={} priors={} restarts={restarts} tolerance={:e}",
        spec.seed,
        spec.n_range.lo,
        spec.n_range.hi,
        spec.samples,
        prior_label(spec.prior_mode),
        args.tolerance,
    );

    if let Some(path) = &args.output {
        let text = match args.format() {
            Format::Csv => report::csv_document(
                &header,
                run.rows
                    .iter()
                    .map(|r| report::csv_row(&r.index(spec.samples).to_string(), &r.report)),
            ),
            Format::Json => {
                let params: Vec<String> = run
                    .rows
                    .iter()
                    .map(|r| r.index(spec.samples).to_string())
                    .collect();
                rows_json(
                    &header,
                    spec.seed,
                    params
                        .iter()
                        .map(String::as_str)
                        .zip(run.rows.iter().map(|r| &r.report)),
                )
            }
        };
        write_text(Some(path), &text, out)?;
    }

    let violations: Vec<&VerifyRow> = run.violations(args.tolerance).collect();
    let mut s = format!("# {header}\nn,d,configs,worst_gap_l1,worst_gap_entropic\n");
    for c in &run.cells {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            c.n,
            c.d,
            c.configs,
            fmt_float(c.worst_gap_l1),
            fmt_float(c.worst_gap_entropic)
        );
    }
    let _ = writeln!(
        s,
        "total_configs={} seed={} worst_gap_l1={} worst_gap_entropic={} violations={}",
        run.rows.len(),
        spec.seed,
        fmt_float(run.worst_gap_l1()),
        fmt_float(run.worst_gap_entropic()),
        violations.len()
    );
    for v in violations.iter().take(MAX_PRINTED_VIOLATIONS) {
        let config = spec.config(&v.cell, v.sample)?;
        let record = ViolationRecord {
            n: v.cell.n,
            d: v.cell.d,
            sample: v.sample,
            seed: spec.seed,
            report: &v.report,
            config: ConfigFile::from_config(&config),
        };
        let _ = writeln!(
            s,
            "violation {}",
            serde_json::to_string(&record).expect("record serializes")
        );
    }
    if violations.len() > MAX_PRINTED_VIOLATIONS {
        let _ = writeln!(
            s,
            "... {} further violations not shown",
            violations.len() - MAX_PRINTED_VIOLATIONS
        );
    }
    write_text(None, &s, out)?;
    Ok(if violations.is_empty() {
        Outcome::Holds
    } else {
        Outcome::Violated
    })
}

pub fn family_spec(args: &Args) -> Result<FamilySpec, CliError> {
    let family: Family = args
        .family
        .as_deref()
        .ok_or_else(|| CliError::Usage("sweep needs --family".into()))?
        .parse()
        .map_err(CliError::Usage)?;
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !(-1.0..=1.0).contains(&args.overlap) {
        return Err(CliError::Usage("--overlap must lie in [-1, 1]".into()));
    }
    let n = match &args.n_range {
        Some(t) => parse_range(t)?.lo,
        None => 4,
    };
    if n < 2 {
        return Err(CliError::Usage("need at least 2 paths".into()));
    }
    let dims = match &args.d_range {
        Some(t) => parse_range(t)?,
        None => IntRange::new(1, 8).expect("nonempty"),
    };
    if dims.lo == 0 {
        return Err(CliError::Usage(
            "detector dimension must be at least 1".into(),
        ));
    }
    Ok(FamilySpec {
        family,
        steps: args.steps,
        overlap: args.overlap,
        n,
        dims,
        prior_mode: prior_mode(args)?,
        seed: args.seed,
    })
}

/// One row per family member, in family order.
pub fn run_sweep(
    spec: &FamilySpec,
    restarts: usize,
) -> pathinfo_core::Result<Vec<(String, DualityReport)>> {
    family_points(spec)?
        .par_iter()
        .map(|p| {
            Ok((
                p.param.clone(),
                report::evaluate(&p.config, restarts, spec.seed)?,
            ))
        })
        .collect()
}

fn sweep(args: &Args, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let spec = family_spec(args)?;
    let restarts = args.restarts();
    let rows = run_sweep(&spec, restarts)?;
    let header = format!(
        "{TOOL} command=sweep family={} steps={} overlap={} n={} d={}..{} priors={} seed={} rng={RNG_ALGORITHM} restarts={restarts}",
        spec.family.name(),
        spec.steps,
        spec.overlap,
        spec.n,
        spec.dims.lo,
        spec.dims.hi,
        prior_label(spec.prior_mode),
        spec.seed,
    );
    let text = match args.format() {
        Format::Csv => {
            report::csv_document(&header, rows.iter().map(|(p, r)| report::csv_row(p, r)))
        }
        Format::Json => rows_json(
            &header,
            spec.seed,
            rows.iter().map(|(p, r)| (p.as_str(), r)),
        ),
    };
    write_text(args.output.as_deref(), &text, out)?;
    Ok(if rows.iter().all(|(_, r)| r.holds(args.tolerance)) {
        Outcome::Holds
    } else {
        Outcome::Violated
    })
}
