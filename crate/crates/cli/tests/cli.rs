use std::process::{Command, Output};

use serde_json::Value;

fn comax(args: &[&str]) -> Output {
    comax_env(args, &[])
}

fn comax_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_comax"));
    cmd.args(args);
    for key in [
        "COMAX_FORMAT",
        "COMAX_TOL",
        "COMAX_MAX_ITERATIONS",
        "COMAX_VERTEX_CAPACITY",
        "COMAX_ORACLE_LIMIT_MIS",
        "COMAX_ORACLE_LIMIT_IND",
    ] {
        cmd.env_remove(key);
    }
    cmd.envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr_json(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    let last = text.lines().last().expect("stderr not empty");
    serde_json::from_str(last).expect("stderr ends with a JSON error")
}

#[test]
fn poly_structured_record() {
    let o = comax(&["poly", "30", "di", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["n"], 30);
    assert_eq!(v["kind"], "di");
    let text = stdout(&o);
    assert!(text.contains("\"8\""), "{text}");
}

#[test]
fn poly_methods_agree() {
    let outputs: Vec<String> = ["closed", "structured", "oracle"]
        .iter()
        .map(|m| {
            let o = comax(&["--format", "text", "poly", "36", "independence", m]);
            assert_eq!(o.status.code(), Some(0), "{m}");
            stdout(&o)
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}

#[test]
fn poly_text_and_csv() {
    let o = comax(&["--format", "text", "poly", "15"]);
    assert_eq!(stdout(&o), "8x + x^3 + x^5\n");
    let o = comax(&["--format", "csv", "poly", "16"]);
    assert_eq!(stdout(&o), "exponent,coefficient\n1,8\n8,1\n");
}

#[test]
fn unsupported_shape_is_exit_2() {
    let o = comax(&["poly", "210", "di", "closed"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(stderr_json(&o)["error"], "unsupported_shape");
}

#[test]
fn oracle_over_limit_is_capacity_error() {
    let o = comax(&["--oracle-limit-mis", "10", "poly", "30", "di", "oracle"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "capacity");
}

#[test]
fn verify_reports_expected_mismatch_but_passes() {
    let o = comax(&["verify", "36"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["expected_mismatches"], 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn verify_range_text() {
    let o = comax(&["--format", "text", "verify", "2", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 39);
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn as_printed_flag_switches_method() {
    let o = comax(&["--format", "text", "--as-printed", "poly", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let printed = stdout(&o);
    let o = comax(&["--format", "text", "poly", "60"]);
    assert_ne!(printed, stdout(&o));
}

#[test]
fn analyze_independence_77() {
    let o = comax(&["analyze", "77", "independence"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &stdout_json(&o)["report"];
    assert_eq!(r["unimodal"], false);
    assert_eq!(r["log_concave"], false);
    assert_eq!(r["oscillation"], 3);
    assert_eq!(r["annulus"]["outer_exact"], "11");
    assert_eq!(r["roots"].as_array().unwrap().len(), 11);
}

#[test]
fn scan_shape_filter() {
    let o = comax(&["--format", "csv", "scan", "2", "40", "--shape", "pq"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let ns: Vec<u64> = rows.iter().map(|r| r.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns, vec![6, 10, 14, 15, 21, 22, 26, 33, 34, 35, 38, 39]);
    let unimodal: Vec<u64> = rows
        .iter()
        .filter(|r| r.split(',').nth(2) == Some("true"))
        .map(|r| r.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(unimodal, vec![6]);
}

#[test]
fn scan_json() {
    let o = comax(&["--format", "json", "scan", "5", "9"]);
    let rows = stdout_json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 5);
    assert_eq!(rows[0]["shape"], "prime");
}

#[test]
fn scan_empty_range() {
    let o = comax(&["scan", "10", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "domain");
}

#[test]
fn export_dot() {
    let o = comax(&["export", "6", "graph-dot"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("graph"), "{text}");
    // K_2 joined to K_1 ∪ P_3
    assert_eq!(text.matches(" -- ").count(), 11);
}

#[test]
fn export_roots_csv() {
    let o = comax(&["export", "5", "roots-csv"]);
    assert_eq!(stdout(&o), "re,im,residual\n0,0,0\n");
    let o = comax(&["export", "32", "roots-csv", "--kind", "independence"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn export_svg_to_file() {
    let dir = std::env::temp_dir().join(format!("comax-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.svg");
    let o = comax(&["export", "77", "roots-svg", "--kind", "independence", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="root""#).count(), 11);
    assert!(svg.contains("annulus-outer"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn svg_omits_annulus_for_di() {
    let o = comax(&["export", "15", "roots-svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("annulus"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("annulus omitted"));
}

#[test]
fn environment_fallback() {
    let o = comax_env(&["poly", "15"], &[("COMAX_FORMAT", "text")]);
    assert_eq!(stdout(&o), "8x + x^3 + x^5\n");
    let o = comax_env(&["--format", "json", "poly", "15"], &[("COMAX_FORMAT", "text")]);
    assert!(stdout_json(&o).is_object());
    let o = comax_env(&["poly", "15"], &[("COMAX_TOL", "0.5")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "domain");
}

#[test]
fn domain_errors() {
    for args in [&["poly", "1"][..], &["poly", "0", "independence"]] {
        let o = comax(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_json(&o)["error"], "domain");
    }
}

#[test]
fn vertex_capacity_applies_to_dot() {
    let o = comax(&["--vertex-capacity", "10", "export", "30", "graph-dot"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "capacity");
}
