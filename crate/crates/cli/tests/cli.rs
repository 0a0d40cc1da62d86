use std::fs;
use std::process::{Command, Output};

fn level2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_level2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    stdout(out).lines().map(str::to_string).collect()
}

#[test]
fn stirling2_csv_rows() {
    let out = level2(&["stirling2", "--nmax", "3"]);
    assert!(out.status.success());
    assert_eq!(lines(&out), ["n:values", "0:1", "1:0,1", "2:0,1,1", "3:0,4,5,1"]);

    let out = level2(&["stirling2", "--nmax", "0"]);
    assert_eq!(lines(&out), ["n:values", "0:1"]);
}

#[test]
fn stirling2_signed_and_json() {
    let out = level2(&["stirling2", "--nmax", "3", "--signed"]);
    assert_eq!(lines(&out).last().unwrap(), "3:0,4,-5,1");

    let out = level2(&["stirling2", "--nmax", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"][2], serde_json::json!(["0", "1", "1"]));
}

#[test]
fn polycauchy_fixture_list() {
    let out = level2(&["polycauchy", "--k", "1", "--nmax", "6"]);
    assert!(out.status.success());
    assert_eq!(
        lines(&out),
        [
            "n,value",
            "0,1",
            "1,1/3",
            "2,-17/15",
            "3,367/21",
            "4,-27859/45",
            "5,1295803/33",
            "6,-5329242827/1365",
        ]
    );
    let out = level2(&["polycauchy", "--k", "1", "--nmax", "0"]);
    assert_eq!(lines(&out), ["n,value", "0,1"]);
}

#[test]
fn polycauchy_routes_agree_and_order_is_raised() {
    let out = level2(&["polycauchy", "--k", "-2", "--nmax", "10", "--route", "both", "--format", "tsv"]);
    assert!(out.status.success());
    let rows = lines(&out);
    assert_eq!(rows[0], "n\tformula\tseries");
    for row in &rows[1..] {
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols[1], cols[2], "{row}");
    }

    let low = level2(&["--order", "2", "polycauchy", "--nmax", "6", "--route", "series"]);
    let formula = level2(&["polycauchy", "--nmax", "6"]);
    assert!(low.status.success());
    assert_eq!(stdout(&low), stdout(&formula));
}

#[test]
fn series_dumps() {
    let out = level2(&["series", "--name", "L", "--order", "4"]);
    assert_eq!(lines(&out).last().unwrap(), "4,-17/360");

    let out = level2(&["series", "--name", "arcsinh", "--order", "3"]);
    assert_eq!(lines(&out), ["index,coefficient", "0,0", "1,1", "2,0", "3,-1/6"]);

    let out = level2(&["series", "--name", "sqrt_1pt2", "--order", "2"]);
    assert_eq!(lines(&out), ["index,coefficient", "0,1", "1,0", "2,1/2"]);

    let out = level2(&["series", "--name", "lif2k", "--k", "0", "--order", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0", "1/2", "0", "1/24"]));
}

#[test]
fn series_usage_errors() {
    assert_eq!(level2(&["series", "--name", "nope"]).status.code(), Some(2));
    assert_eq!(level2(&["series", "--name", "lif2k"]).status.code(), Some(2));
    assert_eq!(level2(&["stirling2", "--format", "text"]).status.code(), Some(2));
}

#[test]
fn verify_passes_with_exit_zero() {
    for id in ["thm2", "thm5", "fold7", "eqll", "thm1", "cor1"] {
        let out = level2(&["verify", "--identity", id, "--nmax", "15"]);
        assert_eq!(out.status.code(), Some(0), "{id}: {}", stdout(&out));
        assert!(stdout(&out).contains("status pass"));
    }
}

#[test]
fn verify_json_schema() {
    let out = level2(&["verify", "--identity", "thm3", "--nmax", "4", "--format", "json"]);
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["identity", "nmax", "status", "results", "first_failure"]);
    assert_eq!(v["status"], "pass");
    assert!(v["first_failure"].is_null());
    assert_eq!(v["results"][0], serde_json::json!({"n": 0, "lhs": "1/3", "rhs": "1/3", "equal": true}));
    assert_eq!(v["results"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_conjecture_prints_polynomials() {
    let out = level2(&["verify", "--identity", "conjecture-r1", "--nmax", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("P_{1,0}(n) = 1  degree_ok=true"), "{text}");
    assert!(text.contains("P_{1,2}(n) = (4) n^2 + (-12) n + 9  degree_ok=true"), "{text}");

    let out = level2(&["verify", "--identity", "conjecture-r3", "--nmax", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["conjecture"]["top_matches"], true);
    assert_eq!(v["conjecture"]["polynomials"][3]["coefficients"][0], "117649");
}

#[test]
fn verify_usage_errors_exit_two() {
    assert_eq!(level2(&["verify", "--identity", "bogus"]).status.code(), Some(2));
    assert_eq!(level2(&["verify", "--identity", "conjecture-r9"]).status.code(), Some(2));
    assert_eq!(level2(&["verify", "--identity", "cor1", "--k", "0"]).status.code(), Some(2));
    assert_eq!(level2(&["verify"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_with_jobs() {
    let a = level2(&["verify", "--identity", "thm6", "--nmax", "12", "--format", "csv"]);
    let b = level2(&["--jobs", "4", "verify", "--identity", "thm6", "--nmax", "12", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(lines(&a)[0], "n,lhs,rhs,equal");
}

#[test]
fn cache_round_trip_reuses_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let cache = cache.to_str().unwrap();
    let args = ["--cache", cache, "--stats", "polycauchy", "--k", "2", "--nmax", "9"];

    let first = level2(&args);
    assert!(first.status.success());
    assert!(stderr(&first).contains("poly-Cauchy values reused 0, computed 10"), "{}", stderr(&first));

    let second = level2(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(
        stderr(&second).contains("triangle rows reused 10, computed 0; poly-Cauchy values reused 10, computed 0"),
        "{}",
        stderr(&second)
    );

    let saved: serde_json::Value = serde_json::from_str(&fs::read_to_string(cache).unwrap()).unwrap();
    assert_eq!(saved["format_version"], 1);
    assert_eq!(saved["triangles"].as_array().unwrap().len(), 10);
    assert_eq!(saved["polycauchy_entries"][1], serde_json::json!({"n": 1, "k": 2, "value": "1/9"}));
}

#[test]
fn cache_with_unknown_version_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    fs::write(&path, r#"{"format_version": 99, "triangles": [["7"]]}"#).unwrap();
    let cache = path.to_str().unwrap();
    let out = level2(&["--cache", cache, "--stats", "stirling2", "--nmax", "3"]);
    assert!(out.status.success());
    assert_eq!(lines(&out)[1], "0:1");
    assert!(stderr(&out).contains("ignored format_version 99"), "{}", stderr(&out));
    // the rewritten file is current and reused next time
    let again = level2(&["--cache", cache, "--stats", "stirling2", "--nmax", "3"]);
    assert!(stderr(&again).contains("triangle rows reused 4, computed 0"));
}
