use std::process::{Command, Output};

use gsp4_local::gsp4local::CheckOutcome;
use gsp4_local::symcore::RatFunc;
use gsp4_verify::{emit, execute, run, Case, Format, Outcome, Report, Status, Suite, SuiteConfig};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsp4-verify")).args(args).env_remove("GSP4_JOBS").output().unwrap()
}

fn small(suites: &[Suite]) -> SuiteConfig {
    SuiteConfig { suites: suites.to_vec(), primes: vec![2], parallelism: 2, timing: false, ..SuiteConfig::default() }
}

#[test]
fn empty_suite_list_gives_empty_report_and_exit_zero() {
    let out = bin(&["--suite", "", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, Value::Array(vec![]));
}

#[test]
fn gl2_suite_passes_with_json_schema() {
    let out = bin(&["--suite", "gl2", "--ell", "2,3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v.is_empty());
    for r in &v {
        let o = r.as_object().unwrap();
        let mut keys: Vec<&str> = o.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["case", "lhs", "ms", "params", "rhs", "status", "suite"]);
        assert_eq!(o["suite"], "gl2");
        assert_eq!(o["status"], "pass");
        assert!(o["lhs"].is_null() && o["rhs"].is_null());
        assert!(o["params"].is_object() && o["ms"].is_number());
    }
    let value_cases = v.iter().filter(|r| r["case"].as_str().unwrap().starts_with("value-at-1")).count();
    assert_eq!(value_cases, 8);
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["--ell", "11"][..],
        &["--ell", "4"],
        &["--a", "4"],
        &["--b", "5"],
        &["--t", "4"],
        &["--suite", "nonsense"],
        &["--format", "xml"],
        &["--jobs", "0"],
        &["--order", "3"],
        &["--config", "/nonexistent/gsp4.conf"],
    ] {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    let report = dir.path().join("report.tsv");
    std::fs::write(&conf, "# sweep\nsuites = wild-norm\nell = 2,3\nm = 0\nn = 1\nt = 1\nformat = json\n").unwrap();
    let out = bin(&["--config", conf.to_str().unwrap(), "--ell", "2", "--format", "tsv", "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rep = Report::from_tsv(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let ids: Vec<&str> = rep.records.iter().map(|r| r.case.as_str()).collect();
    assert_eq!(ids, ["wild-coset:ell=2,m=0,n=1", "indept:ell=2,T=1,t=1", "sufficiency:ell=2,m=0,n=1"]);

    std::fs::write(&conf, "suites = gl2\nbogus line\n").unwrap();
    let out = bin(&["--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn failing_identity_reports_distinct_canonical_sides() {
    let case = Case {
        suite: Suite::Hecke,
        id: "deliberate".into(),
        params: Default::default(),
        job: Box::new(|| {
            let x = RatFunc::var("x");
            Outcome::check(CheckOutcome::compare(&x * &x, &x + &RatFunc::one(), None))
        }),
    };
    let rec = execute(&case, false);
    assert_eq!(rec.status, Status::Fail);
    let (l, r) = (rec.lhs.clone().unwrap(), rec.rhs.clone().unwrap());
    assert_ne!(l, r);
    let report = Report { records: vec![rec] };
    let v: Vec<Value> = serde_json::from_str(&emit(&report, Format::Json)).unwrap();
    assert_eq!(v[0]["status"], "fail");
    assert_eq!(v[0]["lhs"], l.as_str());
    assert!(!report.all_pass());
}

#[test]
fn panicking_case_becomes_error_record() {
    let case = Case { suite: Suite::Gl2, id: "boom".into(), params: Default::default(), job: Box::new(|| panic!("boom")) };
    let rec = execute(&case, false);
    assert_eq!(rec.status, Status::Error);
    assert!(rec.detail.unwrap().contains("boom"));
}

#[test]
fn tsv_round_trips_through_csv_reader() {
    let mut report = run(&small(&[Suite::WildNorm, Suite::LocalData])).unwrap();
    report.records[0].status = Status::Fail;
    report.records[0].lhs = Some("(1/2*X + v)/(1 - alpha)".into());
    report.records[0].rhs = Some("tab\tand \"quote\"".into());
    let text = emit(&report, Format::Tsv);
    assert_eq!(Report::from_tsv(&text).unwrap(), report);

    let mut rd = csv::ReaderBuilder::new().delimiter(b'\t').from_reader(text.as_bytes());
    assert_eq!(rd.records().count(), report.records.len());
}

#[test]
fn reports_are_deterministic_across_worker_counts() {
    let suites = [Suite::Bessel, Suite::WildNorm, Suite::Branching];
    let mut cfg = small(&suites);
    cfg.ranges.a_max = 1;
    cfg.ranges.b_max = 1;
    let one = emit(&run(&SuiteConfig { parallelism: 1, ..cfg.clone() }).unwrap(), Format::Json);
    let four = emit(&run(&SuiteConfig { parallelism: 4, ..cfg.clone() }).unwrap(), Format::Json);
    assert_eq!(one, four);

    let a = bin(&["--suite", "bessel,local-data", "--ell", "2", "--no-timing", "--format", "tsv"]);
    let b = bin(&["--suite", "local-data", "--suite", "bessel", "--ell", "2", "--no-timing", "--format", "tsv", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_order_follows_suite_then_case() {
    let report = run(&small(&[Suite::LocalData, Suite::Hecke])).unwrap();
    let suites: Vec<&str> = report.records.iter().map(|r| r.suite.as_str()).collect();
    let first_local = suites.iter().position(|s| *s == "local-data").unwrap();
    assert!(suites[..first_local].iter().all(|s| *s == "hecke"));
    assert!(report.all_pass());
}

#[test]
fn jobs_env_sets_default_parallelism() {
    let out = Command::new(env!("CARGO_BIN_EXE_gsp4-verify"))
        .args(["--suite", "local-data", "--ell", "2", "--format", "human"])
        .env("GSP4_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("passed, 0 failed, 0 errors"), "{text}");
    std::env::set_var("GSP4_JOBS", "3");
    assert_eq!(gsp4_verify::config::default_parallelism(), 3);
    std::env::remove_var("GSP4_JOBS");
}
