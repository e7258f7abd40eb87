use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn yv(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yv"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("run yv")
}

fn strip_timing(mut v: Value) -> Value {
    if let Value::Array(items) = &mut v {
        for it in items {
            if let Value::Object(o) = it {
                o.remove("elapsed_ms");
            }
        }
    }
    v
}

#[test]
fn gen_zero_writes_one_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = yv(&["gen", "--n-max", "0"], dir.path());
    assert!(o.status.success());
    let names: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(names, vec!["yv_0.json"]);
    let r = yv_cli::read_record(&dir.path().join("yv_0.json")).unwrap();
    assert!(r.poly().is_one());
}

#[test]
fn gen_summary_reports_p30() {
    let dir = tempfile::tempdir().unwrap();
    let o = yv(&["gen", "--n-max", "30"], dir.path());
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    let last = stdout.lines().last().unwrap();
    let cols: Vec<&str> = last.split_whitespace().collect();
    assert_eq!(&cols[..3], &["30", "465", "310"]);
}

#[test]
fn output_dir_falls_back_to_env() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_yv"))
        .args(["gen", "--n-max", "2"])
        .env("YV_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("yv_2.json").exists());
}

#[test]
fn wronskian_needs_n_at_least_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = yv(
        &["verify", "--suites", "wronskian", "--n-max", "0"],
        dir.path(),
    );
    assert!(o.status.success());
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(v[0]["status"], "skipped");
}

#[test]
fn verify_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "verify",
        "--n-max",
        "5",
        "--suites",
        "divisibility,relations,roots,sums",
    ];
    assert!(yv(&args, a.path()).status.success());
    assert!(yv(&args, b.path()).status.success());
    let read = |d: &Path| -> Value {
        strip_timing(
            serde_json::from_str(&fs::read_to_string(d.join("report.json")).unwrap()).unwrap(),
        )
    };
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn csv_report_and_alias() {
    let dir = tempfile::tempdir().unwrap();
    let o = yv(
        &[
            "verify",
            "--n-max",
            "3",
            "--suites",
            "kudryashov",
            "--format",
            "csv",
            "--mode",
            "exact",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("suite,n,status,elapsed_ms,detail"));
    assert_eq!(lines.filter(|l| l.starts_with("selfsums,")).count(), 3);
}

#[test]
fn invalid_config_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let o = yv(&["verify", "--tolerance", "3"], dir.path());
    assert!(!o.status.success());
    let o = yv(&["roots", "--precision-bits", "40"], dir.path());
    assert!(!o.status.success());
}

#[test]
fn roots_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let o = yv(&["roots", "--n-max", "7"], dir.path());
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("roots_7.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 28);
    let csv = fs::read_to_string(dir.path().join("roots_4.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 10);
    let csv = fs::read_to_string(dir.path().join("roots_1.csv")).unwrap();
    assert_eq!(csv.lines().nth(1).unwrap().split(',').nth(1), Some("0"));
    let svg = fs::read_to_string(dir.path().join("roots_7.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<circle").count() >= 28);
    assert!(!svg.contains("href"));
}

#[test]
fn sums_table_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = yv(&["sums", "--n-max", "5", "--m", "3,4,9"], dir.path());
    assert!(o.status.success());
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sums.json")).unwrap()).unwrap();
    let find = |n: u64, m: u64| {
        v.as_array()
            .unwrap()
            .iter()
            .find(|r| r["n"] == n && r["m"] == m)
            .unwrap()
            .clone()
    };
    assert_eq!(find(2, 3)["sum"], "-3/4");
    assert_eq!(find(2, 3)["matches"], true);
    assert_eq!(find(5, 4)["sum"], "0");
    assert_eq!(find(5, 4)["closed_form"], Value::Null);
    assert_eq!(find(1, 9)["sum"], "0");
}
