//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num::{BigInt, BigRational};
use rayon::prelude::*;

use yv_cli::read_record;
use yv_core::gen::{
    backlund_next, check_divisibility, pii_residual, rational_solution, valuation_checks,
    wronskian_check,
};
use yv_core::relations::{self, Mode, RelationInputs, RelationReport};
use yv_core::roots::{self, RootSet};
use yv_core::series::{self, inverse_power_sums};
use yv_core::{generate, VerificationReport, YvRecord};

/// Wall-clock budget for `gen --n-max 8`.
const GEN_BUDGET: Duration = Duration::from_secs(1);
/// Budget for generating and checking divisibility through n = 30.
const DIVISIBILITY_BUDGET: Duration = Duration::from_secs(30);
/// Combined budget for the Wronskian, P_II and Backlund checks.
const IDENTITY_BUDGET: Duration = Duration::from_secs(120);

/// Working precision of every numeric criterion.
const PRECISION_BITS: usize = 256;
/// Numeric relations: relative deviation below 10^-30.
const RELATION_DIGITS: f64 = 30.0;
/// Pole-series coefficients: absolute agreement within 10^-20.
const POLE_SERIES_DIGITS: f64 = 20.0;
/// Numeric against exact inverse power sums: at least 25 significant digits.
const ROOT_SUM_DIGITS: f64 = 25.0;

const EXACT_RELATIONS_N_MAX: u32 = 8;
const NUMERIC_RELATIONS_N_MAX: u32 = 16;
const POLE_SERIES_N_MAX: u32 = 10;
const CLOSED_FORM_N_MAX: u32 = 25;
const ZERO_SUM_M_MAX: u32 = 30;
const SERIES_ORDER: usize = 20;
const SERIES_N_MAX: u32 = 10;
const FIT_MAX: u32 = 25;
const FIT_N_MAX: u32 = 51;
const ROOTS_N_MAX: u32 = 16;

/// Exact and numeric relation reports for one `n`.
type ModeReports = (Vec<RelationReport>, Vec<RelationReport>);
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    ok: bool,
    note: String,
}

fn pass(note: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        note: note.into(),
    }
}

fn fail(note: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        note: note.into(),
    }
}

fn first_failure(reports: &[VerificationReport]) -> Option<String> {
    reports
        .iter()
        .find(|r| r.failed())
        .map(|r| serde_json::to_string(r).unwrap_or_default())
}

fn from_reports(reports: &[VerificationReport], note: String) -> Outcome {
    match first_failure(reports) {
        None => pass(note),
        Some(w) => fail(format!("{note}; first failure {w}")),
    }
}

fn big(s: &str) -> BigInt {
    s.parse().unwrap()
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Reference coefficients of Q_2..Q_8, compressed, highest power first.
fn table_one() -> Vec<(u32, Vec<BigInt>)> {
    let t: [(u32, &[&str]); 7] = [
        (2, &["1", "4"]),
        (3, &["1", "20", "-80"]),
        (4, &["1", "60", "0", "11200"]),
        (5, &["1", "140", "2800", "78400", "-3136000", "-6272000"]),
        (
            6,
            &[
                "1",
                "280",
                "18480",
                "627200",
                "-17248000",
                "1448832000",
                "19317760000",
                "-38635520000",
            ],
        ),
        (
            7,
            &[
                "1",
                "504",
                "75600",
                "5174400",
                "62092800",
                "13039488000",
                "-828731904000",
                "-49723914240000",
                "0",
                "-3093932441600000",
            ],
        ),
        (
            8,
            &[
                "1",
                "840",
                "240240",
                "32771200",
                "2018016000",
                "124309785600",
                "-6629855232000",
                "407736096768000",
                "126696533483520000",
                "1769729356595200000",
                "37164316488499200000",
                "-743286329769984000000",
                "-991048439693312000000",
            ],
        ),
    ];
    t.iter()
        .map(|(n, c)| (*n, c.iter().map(|s| big(s)).collect()))
        .collect()
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let t = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_yv"))
        .args(["gen", "--n-max", "8", "--out"])
        .arg(dir.path())
        .output()
        .expect("run yv gen");
    let elapsed = t.elapsed();
    if !status.status.success() {
        return fail(format!("yv gen exited with {}", status.status));
    }
    for (n, want) in table_one() {
        let rec = match read_record(&dir.path().join(format!("yv_{n}.json"))) {
            Ok(r) => r,
            Err(e) => return fail(format!("Q_{n}: {e}")),
        };
        if rec.compressed() != want.as_slice() {
            return fail(format!(
                "Q_{n} differs from the table: {:?}",
                rec.compressed()
            ));
        }
    }
    if elapsed > GEN_BUDGET {
        return fail(format!("gen took {elapsed:?}"));
    }
    pass(format!(
        "Q_2..Q_8 match coefficient for coefficient in {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let recs = generate(30).expect("generate");
    let reports: Vec<_> = recs.iter().map(check_divisibility).collect();
    let elapsed = t.elapsed();
    if elapsed > DIVISIBILITY_BUDGET {
        return fail(format!("took {elapsed:?}"));
    }
    from_reports(
        &reports,
        format!("4^m | a_m^n for n <= 30 in {elapsed:.2?}"),
    )
}

fn criterion_3(recs: &[YvRecord]) -> Outcome {
    let report = valuation_checks(&recs[..=30]);
    if recs[2].p_n() != 2 || recs[5].p_n() != 10 {
        return fail(format!("p_2 = {}, p_5 = {}", recs[2].p_n(), recs[5].p_n()));
    }
    if recs[30].p_n() != 310 {
        return fail(format!("p_30 = {}", recs[30].p_n()));
    }
    from_reports(
        &[report],
        "x_n recursion and p_n = [n(n+1)/3] for n <= 30; p_2 = 2, p_5 = 10".into(),
    )
}

fn criterion_4(recs: &[YvRecord]) -> Outcome {
    let t = Instant::now();
    let mut reports: Vec<VerificationReport> = (1..=20)
        .into_par_iter()
        .map(|n| wronskian_check(recs, n))
        .collect();
    reports.par_extend(
        (1..=12i64)
            .into_par_iter()
            .map(|n| match rational_solution(recs, n) {
                Ok(w) => pii_residual(&w),
                Err(e) => {
                    VerificationReport::fail("pii", None, e.to_string(), serde_json::Value::Null)
                }
            }),
    );
    for n in 0..=12i64 {
        let ok = rational_solution(recs, n)
            .and_then(|w| backlund_next(&w))
            .and_then(|b| Ok(b.same_function(&rational_solution(recs, n + 1)?)));
        match ok {
            Ok(true) => {}
            Ok(false) => return fail(format!("Backlund image of w_{n} differs from w_{}", n + 1)),
            Err(e) => return fail(format!("Backlund at n = {n}: {e}")),
        }
    }
    let elapsed = t.elapsed();
    if elapsed > IDENTITY_BUDGET {
        return fail(format!("took {elapsed:?}"));
    }
    from_reports(
        &reports,
        format!("Wronskian n <= 20, P_II n <= 12, Backlund n <= 12 in {elapsed:.2?}"),
    )
}

fn all_families(inp: &RelationInputs, mode: Mode) -> Result<Vec<RelationReport>, String> {
    let mut out = Vec::new();
    for f in [
        relations::verify_theorem,
        relations::verify_corollary,
        relations::verify_self_sums,
    ] {
        out.extend(f(inp, mode).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn criterion_5(recs: &[YvRecord], roots: &[RootSet]) -> Outcome {
    let results: Vec<Result<ModeReports, String>> = (1..=NUMERIC_RELATIONS_N_MAX)
        .into_par_iter()
        .map(|n| {
            let k = n as usize;
            let mut inp = RelationInputs::exact(&recs[k - 1], &recs[k]);
            inp.tolerance_digits = RELATION_DIGITS;
            let exact = if n <= EXACT_RELATIONS_N_MAX {
                all_families(&inp, Mode::Exact)?
            } else {
                vec![]
            };
            inp.prev_roots = Some(&roots[k - 1]);
            inp.cur_roots = Some(&roots[k]);
            Ok((exact, all_families(&inp, Mode::Numeric)?))
        })
        .collect();
    let mut worst = String::from("-");
    let mut worst_l2 = f64::NEG_INFINITY;
    let mut count = 0;
    for (i, res) in results.iter().enumerate() {
        let (exact, numeric) = match res {
            Ok(v) => v,
            Err(e) => return fail(format!("n = {}: {e}", i + 1)),
        };
        for r in exact.iter().chain(numeric) {
            count += 1;
            if !r.passed() {
                return fail(serde_json::to_string(r).unwrap_or_default());
            }
            if r.mode == Mode::Exact && r.residue.is_some() {
                return fail(format!("nonzero residue {:?}", r));
            }
        }
        for r in numeric {
            if let Some(d) = &r.deviation {
                let v: f64 = d.parse().unwrap_or(f64::INFINITY);
                if v.log2() > worst_l2 {
                    worst_l2 = v.log2();
                    worst = d.clone();
                }
            }
        }
        if !exact.is_empty() {
            let agree = relations::modes_agree(exact, numeric);
            if agree.failed() {
                return fail(serde_json::to_string(&agree).unwrap_or_default());
            }
        }
    }
    pass(format!(
        "{count} relation checks; exact residues zero for n <= 8, worst numeric deviation {worst} for n <= 16"
    ))
}

fn criterion_6(recs: &[YvRecord], roots: &[RootSet]) -> Outcome {
    let reports: Vec<VerificationReport> = (1..=POLE_SERIES_N_MAX)
        .into_par_iter()
        .map(|n| {
            let k = n as usize;
            let mut inp = RelationInputs::exact(&recs[k - 1], &recs[k]);
            inp.tolerance_digits = POLE_SERIES_DIGITS;
            inp.prev_roots = Some(&roots[k - 1]);
            inp.cur_roots = Some(&roots[k]);
            relations::pole_series_all(&inp, 4).unwrap_or_else(|e| {
                VerificationReport::fail(
                    "poleseries",
                    Some(n.into()),
                    e.to_string(),
                    serde_json::Value::Null,
                )
            })
        })
        .collect();
    from_reports(
        &reports,
        "a_0, a_1, a_2, a_4 at every root of Q_{n-1}, n <= 10".into(),
    )
}

fn criterion_7(recs: &[YvRecord]) -> Outcome {
    let closed = series::verify_closed_forms(recs, CLOSED_FORM_N_MAX);
    let closed = match closed {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let tables = series::power_sum_tables(&recs[..=CLOSED_FORM_N_MAX as usize], ZERO_SUM_M_MAX);
    let zero = series::check_zero_sums(&tables);
    let spots = [(2, 3, q(-3, 4)), (3, 3, q(3, 4)), (2, 6, q(3, 16))];
    for (n, m, want) in spots {
        let got = tables[n].get(m);
        if got != want {
            return fail(format!("n = {n}, m = {m}: got {got}, want {want}"));
        }
    }
    from_reports(
        &[closed, zero],
        "m = 3, 6, 9 closed forms for n <= 25; zero sums for m <= 30; spot values".into(),
    )
}

fn criterion_8(recs: &[YvRecord]) -> Outcome {
    let reports: Vec<VerificationReport> = (1..=SERIES_N_MAX)
        .into_par_iter()
        .map(|n| {
            series::cross_check_series(recs, n, SERIES_ORDER).unwrap_or_else(|e| {
                VerificationReport::fail(
                    "series",
                    Some(n.into()),
                    e.to_string(),
                    serde_json::Value::Null,
                )
            })
        })
        .collect();
    let s = match series::series_at_zero(recs, 3, SERIES_ORDER) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let spots = [(2, q(3, 2)), (5, q(3, 40)), (8, q(3, 2240) + q(27, 224))];
    for (m, want) in spots {
        if s.coeff(m) != want {
            return fail(format!("n = 3: a_{m} = {}, want {want}", s.coeff(m)));
        }
    }
    from_reports(
        &reports,
        "ODE and Newton coefficients agree through order 20, n <= 10".into(),
    )
}

fn criterion_9(recs: &[YvRecord]) -> Outcome {
    let reports: Vec<VerificationReport> = [12, 15]
        .par_iter()
        .map(|&m| series::verify_polynomiality(recs, m, FIT_MAX, FIT_N_MAX))
        .collect();
    from_reports(
        &reports,
        format!("m = 12, 15: fits on n <= {FIT_MAX} predict n <= {FIT_N_MAX} exactly"),
    )
}

fn criterion_10(recs: &[YvRecord], roots: &[RootSet]) -> Outcome {
    let tol_l2 = -ROOT_SUM_DIGITS * std::f64::consts::LOG2_10;
    let mut worst = f64::NEG_INFINITY;
    for n in 0..=ROOTS_N_MAX as usize {
        let (rs, r) = (&roots[n], &recs[n]);
        let cert = roots::certify(rs, r);
        if cert.failed() {
            return fail(serde_json::to_string(&cert).unwrap_or_default());
        }
        if rs.len() != r.degree() || (rs.len() > 1 && yv_core::mp::is_zero(rs.min_separation())) {
            return fail(format!("n = {n}: count {} or separation", rs.len()));
        }
        let exact = inverse_power_sums(r, 15);
        for m in 1..=15 {
            let (num, mag) = roots::numeric_inverse_power_sum(rs, m);
            let dev = roots::relative_deviation_log2(&num, &mag, &exact.get(m));
            worst = worst.max(dev);
            if dev > tol_l2 {
                return fail(format!(
                    "n = {n}, m = {m}: log2 relative deviation {dev:.1}"
                ));
            }
        }
    }
    pass(format!(
        "n <= 16 certified; inverse power sums m <= 15 agree to {:.0} digits",
        -worst / std::f64::consts::LOG2_10
    ))
}

fn main() -> ExitCode {
    let t = Instant::now();
    let recs = generate(FIT_N_MAX).expect("generate");
    let roots: Vec<RootSet> = (0..=ROOTS_N_MAX as usize)
        .into_par_iter()
        .map(|n| roots::roots_of(&recs[n], PRECISION_BITS).expect("roots"))
        .collect();
    println!(
        "setup: records n <= {FIT_N_MAX}, roots n <= {ROOTS_N_MAX} in {:.2?}",
        t.elapsed()
    );

    let criteria: Vec<(&str, Criterion)> = vec![
        ("golden family", Box::new(criterion_1)),
        ("divisibility", Box::new(criterion_2)),
        ("valuations", Box::new(|| criterion_3(&recs))),
        ("wronskian, P_II, Backlund", Box::new(|| criterion_4(&recs))),
        ("root relations", Box::new(|| criterion_5(&recs, &roots))),
        ("pole series", Box::new(|| criterion_6(&recs, &roots))),
        ("closed forms", Box::new(|| criterion_7(&recs))),
        ("series cross-check", Box::new(|| criterion_8(&recs))),
        ("polynomiality", Box::new(|| criterion_9(&recs))),
        (
            "root certification",
            Box::new(|| criterion_10(&recs, &roots)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!o.ok);
        println!(
            "{tag} {:>2} {name}: {} [{:.2?}]",
            i + 1,
            o.note,
            t.elapsed()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
