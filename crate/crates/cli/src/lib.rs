//! Commands behind the `yv` binary: generation, verification suites, root
//! extraction and inverse power-sum tables.
//!
//! Every command takes a [`RunConfig`] and writes its artifacts below
//! `output_dir`; verification results are returned so callers decide the exit
//! status.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use num::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use yv_core::gen::{
    backlund_next, check_divisibility, cube_compress, mod4_reduction, pii_residual,
    rational_solution, valuation_checks, verify_irrationality_premises, wronskian_check, yv_degree,
};
use yv_core::relations::{
    self, modes_agree, pole_series_all, Mode, RelationInputs, RelationReport,
};
use yv_core::roots::{self, RootSet};
use yv_core::series::{self, inverse_power_sums};
use yv_core::{generate, Status, VerificationReport, YvRecord};

pub const DEFAULT_N_MAX: u32 = 12;
pub const DEFAULT_PRECISION_BITS: usize = 256;
pub const DEFAULT_TOLERANCE: u32 = 30;
pub const DEFAULT_SEED: u64 = roots::DEFAULT_SEED;

/// Largest `m` for the zero-sum symmetry check.
pub const ZERO_SUM_M_MAX: u32 = 30;
/// Order of the series cross-check at `z = 0`.
pub const SERIES_ORDER: usize = 20;
/// Pole-series coefficients are computed through `a_5`.
pub const POLE_SERIES_M_MAX: usize = 5;
/// Powers used for the polynomiality fits; the fit range is at least `FIT_MIN`.
pub const FIT_POWERS: [u32; 2] = [12, 15];
pub const FIT_MIN: u32 = 25;
/// Inverse powers cross-checked between numeric roots and Newton sums.
pub const ROOT_SUM_POWERS: [u32; 5] = [3, 6, 9, 12, 15];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RunMode {
    Exact,
    Numeric,
    Both,
}

impl RunMode {
    fn exact(self) -> bool {
        self != RunMode::Numeric
    }

    fn numeric(self) -> bool {
        self != RunMode::Exact
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    Structure,
    Divisibility,
    Valuation,
    Wronskian,
    Pii,
    Backlund,
    Relations,
    Corollary,
    #[value(alias = "kudryashov")]
    Selfsums,
    Poleseries,
    Sums,
    Series,
    Remark,
    Roots,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        Suite::value_variants().to_vec()
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Divisibility => "divisibility",
            Suite::Valuation => "valuation",
            Suite::Wronskian => "wronskian",
            Suite::Pii => "pii",
            Suite::Backlund => "backlund",
            Suite::Relations => "relations",
            Suite::Corollary => "corollary",
            Suite::Selfsums => "selfsums",
            Suite::Poleseries => "poleseries",
            Suite::Sums => "sums",
            Suite::Series => "series",
            Suite::Remark => "remark",
            Suite::Roots => "roots",
        }
    }

    fn needs_roots(self, mode: RunMode) -> bool {
        match self {
            Suite::Relations | Suite::Corollary | Suite::Selfsums => mode.numeric(),
            Suite::Poleseries | Suite::Roots => true,
            _ => false,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n_max: u32,
    pub precision_bits: usize,
    /// Numeric checks pass below a relative deviation of `10^{-tolerance_exponent}`.
    pub tolerance_exponent: u32,
    pub mode: RunMode,
    pub output_dir: PathBuf,
    pub report_format: ReportFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_max: DEFAULT_N_MAX,
            precision_bits: DEFAULT_PRECISION_BITS,
            tolerance_exponent: DEFAULT_TOLERANCE,
            mode: RunMode::Both,
            output_dir: PathBuf::from("yv-out"),
            report_format: ReportFormat::Json,
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 53 {
            bail!(
                "precision must be at least 53 bits, got {}",
                self.precision_bits
            );
        }
        if self.tolerance_exponent < 6 {
            bail!(
                "tolerance exponent must be at least 6, got {}",
                self.tolerance_exponent
            );
        }
        Ok(())
    }

    fn ensure_out(&self) -> Result<&Path> {
        fs::create_dir_all(&self.output_dir)
            .with_context(|| format!("creating {}", self.output_dir.display()))?;
        Ok(&self.output_dir)
    }
}

fn timed<F: FnOnce() -> VerificationReport>(f: F) -> VerificationReport {
    let t = Instant::now();
    let mut r = f();
    r.elapsed_ms = Some(t.elapsed().as_secs_f64() * 1e3);
    r
}

fn error_report(suite: &str, n: Option<u64>, err: impl fmt::Display) -> VerificationReport {
    VerificationReport::fail(
        suite,
        n,
        "integrity error",
        json!({ "error": err.to_string() }),
    )
}

/// Summary row printed by `gen`.
pub fn summary_line(r: &YvRecord) -> String {
    format!("{:>4} {:>6} {:>5}  {}", r.n(), r.degree(), r.p_n(), r.x_n())
}

/// `gen`: writes `yv_<n>.json` for `n <= n_max` and returns the records.
pub fn cmd_gen(cfg: &RunConfig) -> Result<Vec<YvRecord>> {
    cfg.validate()?;
    let records = generate(cfg.n_max)?;
    let out = cfg.ensure_out()?;
    for r in &records {
        let path = out.join(format!("yv_{}.json", r.n()));
        let body = serde_json::to_string_pretty(&r.to_document())?;
        fs::write(&path, body + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(records)
}

/// Reads back a file written by [`cmd_gen`].
pub fn read_record(path: &Path) -> Result<YvRecord> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = serde_json::from_str(&text)?;
    Ok(YvRecord::from_document(&doc)?)
}

/// Everything the suites share: exact records and, when needed, root sets.
pub struct Workspace {
    pub records: Vec<YvRecord>,
    pub roots: Vec<Option<Result<RootSet, String>>>,
}

impl Workspace {
    pub fn prepare(cfg: &RunConfig, suites: &[Suite]) -> Result<Self> {
        let mut top = cfg.n_max + 1;
        if suites.contains(&Suite::Remark) {
            top = top.max(2 * cfg.n_max.max(FIT_MIN) + 1);
        }
        let records = generate(top)?;
        let want_roots = suites.iter().any(|s| s.needs_roots(cfg.mode));
        let roots = (0..=cfg.n_max as usize)
            .into_par_iter()
            .map(|n| {
                want_roots.then(|| {
                    roots::roots_of_seeded(&records[n], cfg.precision_bits, cfg.seed)
                        .map_err(|e| e.to_string())
                })
            })
            .collect();
        Ok(Workspace { records, roots })
    }

    fn root_set(&self, n: u32) -> Result<&RootSet, String> {
        match self.roots.get(n as usize) {
            Some(Some(Ok(rs))) => Ok(rs),
            Some(Some(Err(e))) => Err(format!("roots of Q_{n}: {e}")),
            _ => Err(format!("roots of Q_{n} were not computed")),
        }
    }

    fn inputs(&self, n: u32, tolerance: f64, numeric: bool) -> Result<RelationInputs<'_>, String> {
        let mut inp =
            RelationInputs::exact(&self.records[n as usize - 1], &self.records[n as usize]);
        inp.tolerance_digits = tolerance;
        if numeric {
            inp.prev_roots = Some(self.root_set(n - 1)?);
            inp.cur_roots = Some(self.root_set(n)?);
        }
        Ok(inp)
    }
}

/// Runs the selected suites; one report per suite and `n` (or per suite for range checks).
pub fn run_suites(cfg: &RunConfig, suites: &[Suite]) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let ws = Workspace::prepare(cfg, suites)?;
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let mut out = Vec::new();
    for s in suites {
        out.extend(run_suite(cfg, &ws, s));
    }
    Ok(out)
}

fn per_n<F>(from: u32, to: u32, f: F) -> Vec<VerificationReport>
where
    F: Fn(u32) -> VerificationReport + Sync,
{
    (from..=to)
        .into_par_iter()
        .map(|n| timed(|| f(n)))
        .collect()
}

pub fn run_suite(cfg: &RunConfig, ws: &Workspace, suite: Suite) -> Vec<VerificationReport> {
    let name = suite.name();
    let recs = &ws.records;
    let n_max = cfg.n_max;
    let tol = cfg.tolerance_exponent as f64;
    let needs_n1 = |n_max: u32| {
        (n_max == 0).then(|| vec![VerificationReport::skipped(name, Some(0), "needs n >= 1")])
    };
    match suite {
        Suite::Structure => per_n(0, n_max, |n| structure_check(&recs[n as usize])),
        Suite::Divisibility => per_n(0, n_max, |n| check_divisibility(&recs[n as usize])),
        Suite::Valuation => vec![timed(|| valuation_checks(&recs[..=n_max as usize]))],
        Suite::Wronskian => {
            needs_n1(n_max).unwrap_or_else(|| per_n(1, n_max, |n| wronskian_check(recs, n)))
        }
        Suite::Pii => per_n(0, n_max, |n| {
            let parts: Vec<VerificationReport> = [n as i64, -(n as i64)]
                .iter()
                .map(|&k| match rational_solution(recs, k) {
                    Ok(w) => pii_residual(&w),
                    Err(e) => error_report(name, Some(n.into()), e),
                })
                .collect();
            VerificationReport::aggregate(name, Some(n.into()), &parts)
        }),
        Suite::Backlund => per_n(0, n_max, |n| backlund_check(recs, n)),
        Suite::Relations | Suite::Corollary | Suite::Selfsums => needs_n1(n_max)
            .unwrap_or_else(|| per_n(1, n_max, |n| relation_suite(cfg, ws, suite, n))),
        Suite::Poleseries => needs_n1(n_max).unwrap_or_else(|| {
            per_n(1, n_max, |n| {
                let res = ws.inputs(n, tol, true).and_then(|inp| {
                    pole_series_all(&inp, POLE_SERIES_M_MAX).map_err(|e| e.to_string())
                });
                res.unwrap_or_else(|e| error_report(name, Some(n.into()), e))
            })
        }),
        Suite::Sums => sums_suite(recs, n_max),
        Suite::Series => needs_n1(n_max).unwrap_or_else(|| {
            per_n(1, n_max, |n| {
                series::cross_check_series(recs, n, SERIES_ORDER)
                    .unwrap_or_else(|e| error_report(name, Some(n.into()), e))
            })
        }),
        Suite::Remark => {
            let fit_max = n_max.max(FIT_MIN);
            FIT_POWERS
                .par_iter()
                .map(|&m| timed(|| series::verify_polynomiality(recs, m, fit_max, 2 * fit_max + 1)))
                .collect()
        }
        Suite::Roots => per_n(0, n_max, |n| roots_check(ws, n)),
    }
}

fn structure_check(r: &YvRecord) -> VerificationReport {
    let n = Some(r.n().into());
    let mut failures = Vec::new();
    if r.degree() != yv_degree(r.n()) {
        failures.push(json!({"degree": r.degree(), "expected": yv_degree(r.n())}));
    }
    if !r.poly().is_monic() {
        failures.push(json!({"leading": r.poly().leading().map(|c| c.to_string())}));
    }
    match cube_compress(r) {
        Ok(c) if c == r.compressed() => {}
        Ok(_) => failures.push(json!({"compressed": "recomputed coefficients differ"})),
        Err(e) => failures.push(json!({"compressed": e.to_string()})),
    }
    for part in [mod4_reduction(r), verify_irrationality_premises(r)] {
        if part.failed() {
            failures.push(serde_json::to_value(&part).unwrap_or_default());
        }
    }
    VerificationReport::from_failures(
        "structure",
        n,
        "degree, monic, z^3 structure, mod-4 reduction, irrationality premises",
        failures,
    )
}

fn backlund_check(recs: &[YvRecord], n: u32) -> VerificationReport {
    let suite = "backlund";
    let step = rational_solution(recs, n as i64).and_then(|w| backlund_next(&w));
    let direct = rational_solution(recs, n as i64 + 1);
    match (step, direct) {
        (Ok(a), Ok(b)) if a.same_function(&b) => VerificationReport::pass(
            suite,
            Some(n.into()),
            format!("Backlund image of w_{n} equals w_{}", n + 1),
        ),
        (Ok(a), Ok(b)) => VerificationReport::fail(
            suite,
            Some(n.into()),
            format!("Backlund image of w_{n} differs from w_{}", n + 1),
            json!({
                "backlund": {"num": a.numerator().to_string(), "den": a.denominator().to_string()},
                "quotient": {"num": b.numerator().to_string(), "den": b.denominator().to_string()},
            }),
        ),
        (Err(e), _) | (_, Err(e)) => error_report(suite, Some(n.into()), e),
    }
}

fn relation_report(r: &RelationReport) -> VerificationReport {
    let mode = match r.mode {
        Mode::Exact => "exact",
        Mode::Numeric => "numeric",
    };
    let mut detail = format!("{} [{mode}]", r.family);
    if let Some(d) = &r.deviation {
        detail.push_str(&format!(" deviation {d}"));
    }
    let witness = serde_json::to_value(r).unwrap_or_default();
    match r.status {
        Status::Fail => VerificationReport::fail("relation", Some(r.n.into()), detail, witness),
        Status::Skipped => VerificationReport::skipped("relation", Some(r.n.into()), detail),
        Status::Pass => VerificationReport::pass("relation", Some(r.n.into()), detail),
    }
}

fn relation_suite(cfg: &RunConfig, ws: &Workspace, suite: Suite, n: u32) -> VerificationReport {
    let name = suite.name();
    let tol = cfg.tolerance_exponent as f64;
    let run = |mode: Mode| -> Result<Vec<RelationReport>, String> {
        let inp = ws.inputs(n, tol, mode == Mode::Numeric)?;
        let r = match suite {
            Suite::Relations => relations::verify_theorem(&inp, mode),
            Suite::Corollary => relations::verify_corollary(&inp, mode),
            _ => relations::verify_self_sums(&inp, mode),
        };
        r.map_err(|e| e.to_string())
    };
    let mut parts = Vec::new();
    let exact = cfg.mode.exact().then(|| run(Mode::Exact));
    let numeric = cfg.mode.numeric().then(|| run(Mode::Numeric));
    for res in [&exact, &numeric].into_iter().flatten() {
        match res {
            Ok(rs) => parts.extend(rs.iter().map(relation_report)),
            Err(e) => parts.push(error_report(name, Some(n.into()), e)),
        }
    }
    if let (Some(Ok(e)), Some(Ok(x))) = (&exact, &numeric) {
        parts.push(modes_agree(e, x));
    }
    let mut agg = VerificationReport::aggregate(name, Some(n.into()), &parts);
    let lines: Vec<&str> = parts.iter().map(|p| p.detail.as_str()).collect();
    agg.detail = lines.join("; ");
    agg
}

fn sums_suite(recs: &[YvRecord], n_max: u32) -> Vec<VerificationReport> {
    let tables = series::power_sum_tables(&recs[..=n_max as usize], ZERO_SUM_M_MAX);
    let mut out = vec![timed(|| series::check_zero_sums(&tables))];
    out.push(timed(|| {
        series::verify_closed_forms(recs, n_max)
            .unwrap_or_else(|e| error_report("sums.closed", None, e))
    }));
    out.push(timed(|| {
        series::verify_difference_relations(recs, n_max)
            .unwrap_or_else(|e| error_report("sums.difference", None, e))
    }));
    out
}

fn roots_check(ws: &Workspace, n: u32) -> VerificationReport {
    let name = "roots";
    let r = &ws.records[n as usize];
    let rs = match ws.root_set(n) {
        Ok(rs) => rs,
        Err(e) => return error_report(name, Some(n.into()), e),
    };
    let parts = vec![
        roots::certify(rs, r),
        roots::newton_cross_check(rs, r, &ROOT_SUM_POWERS),
        roots::root_sum_check(rs),
    ];
    let mut agg = VerificationReport::aggregate(name, Some(n.into()), &parts);
    let lines: Vec<&str> = parts.iter().map(|p| p.detail.as_str()).collect();
    agg.detail = lines.join("; ");
    agg
}

/// Writes the verification report in the configured format and returns its path.
pub fn write_report(cfg: &RunConfig, reports: &[VerificationReport]) -> Result<PathBuf> {
    let out = cfg.ensure_out()?;
    let (path, body) = match cfg.report_format {
        ReportFormat::Json => (
            out.join("report.json"),
            serde_json::to_string_pretty(reports)? + "\n",
        ),
        ReportFormat::Csv => (out.join("report.csv"), reports_to_csv(reports)),
    };
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn reports_to_csv(reports: &[VerificationReport]) -> String {
    let mut s = String::from("suite,n,status,elapsed_ms,detail\n");
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            r.suite,
            r.n.map(|n| n.to_string()).unwrap_or_default(),
            status,
            r.elapsed_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
            csv_field(&r.detail)
        ));
    }
    s
}

/// Result of `roots` for one `n`.
pub struct RootsOutcome {
    pub n: u32,
    pub report: VerificationReport,
    pub files: Vec<PathBuf>,
}

/// `roots`: certified root CSV and SVG scatter per `n`; failures are per `n`.
pub fn cmd_roots(cfg: &RunConfig) -> Result<Vec<RootsOutcome>> {
    cfg.validate()?;
    let out = cfg.ensure_out()?.to_path_buf();
    let records = generate(cfg.n_max)?;
    let outcomes: Vec<Result<RootsOutcome>> = records
        .par_iter()
        .map(|r| {
            let n = r.n();
            let t = Instant::now();
            let rs = match roots::roots_of_seeded(r, cfg.precision_bits, cfg.seed) {
                Ok(rs) => rs,
                Err(e) => {
                    return Ok(RootsOutcome {
                        n,
                        report: error_report("roots", Some(n.into()), e),
                        files: vec![],
                    })
                }
            };
            let mut report = roots::certify(&rs, r);
            report.elapsed_ms = Some(t.elapsed().as_secs_f64() * 1e3);
            let csv = out.join(format!("roots_{n}.csv"));
            let svg = out.join(format!("roots_{n}.svg"));
            fs::write(&csv, roots::to_csv(&rs))?;
            fs::write(&svg, roots::to_svg(&rs))?;
            Ok(RootsOutcome {
                n,
                report,
                files: vec![csv, svg],
            })
        })
        .collect();
    outcomes.into_iter().collect()
}

/// One row of the `sums` table.
#[derive(Debug, Clone, PartialEq)]
pub struct SumRow {
    pub n: u32,
    pub m: u32,
    pub sum: BigRational,
    pub closed_form: Option<BigRational>,
}

impl SumRow {
    pub fn matches(&self) -> Option<bool> {
        self.closed_form.as_ref().map(|c| c == &self.sum)
    }
}

fn ratio_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact `sum z^{-m}` over the nonzero roots for `n <= n_max` and each `m`.
pub fn sums_table(cfg: &RunConfig, ms: &[u32]) -> Result<Vec<SumRow>> {
    if let Some(m) = ms.iter().find(|&&m| m == 0) {
        bail!("power must be at least 1, got {m}");
    }
    let records = generate(cfg.n_max)?;
    let max_m = ms.iter().copied().max().unwrap_or(0);
    let rows = records
        .par_iter()
        .map(|r| {
            let t = inverse_power_sums(r, max_m);
            ms.iter()
                .map(|&m| SumRow {
                    n: r.n(),
                    m,
                    sum: t.get(m),
                    closed_form: series::closed_form(m, r.n()),
                })
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    Ok(rows)
}

/// `sums`: writes `sums.json` or `sums.csv` and returns the rows.
pub fn cmd_sums(cfg: &RunConfig, ms: &[u32]) -> Result<(Vec<SumRow>, PathBuf)> {
    cfg.validate()?;
    let rows = sums_table(cfg, ms)?;
    let out = cfg.ensure_out()?;
    let (path, body) = match cfg.report_format {
        ReportFormat::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "m": r.m,
                        "sum": ratio_string(&r.sum),
                        "closed_form": r.closed_form.as_ref().map(ratio_string),
                        "matches": r.matches(),
                    })
                })
                .collect();
            (
                out.join("sums.json"),
                serde_json::to_string_pretty(&v)? + "\n",
            )
        }
        ReportFormat::Csv => {
            let mut s = String::from("n,m,sum,closed_form,matches\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    r.m,
                    ratio_string(&r.sum),
                    r.closed_form.as_ref().map(ratio_string).unwrap_or_default(),
                    r.matches().map(|b| b.to_string()).unwrap_or_default()
                ));
            }
            (out.join("sums.csv"), s)
        }
    };
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok((rows, path))
}
