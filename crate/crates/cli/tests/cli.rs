use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_suspcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const SPIN: &str = r#"{"label":"spin","m":1,"d":1,"spin":true,"postnikov_trivial":true,
    "torsion":{"torsion":[{"prime":2,"exponent":2}]}}"#;
const CASE_B: &str = r#"{"label":"b","m":0,"d":1,"spin":false,"sq2_case":{"case_b":1},"postnikov_trivial":false,
    "torsion":{"torsion":[{"prime":2,"exponent":2}]}}"#;
const OMITTED: &str = r#"{"label":"x","m":0,"d":1,"spin":false,"theta_on_h1":{"nontrivial":1},
    "sq2_case":"case_a","postnikov_trivial":true,"torsion":{"torsion":[{"prime":2,"exponent":1}]}}"#;

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn classify_single_from_file_and_stdin() {
    let f = file(SPIN);
    let a = run(&["classify", f.path().to_str().unwrap(), "--json"], None);
    let b = run(&["classify", "--json"], Some(SPIN));
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(
        v["decomposition"],
        "S^3 v P^4(4) v S^4 v P^5(4) v S^5 v S^6"
    );
    assert_eq!(v["label"], "spin");
}

#[test]
fn batch_keeps_order_and_is_byte_stable() {
    let batch = format!("[{SPIN},{CASE_B},{SPIN},{CASE_B}]");
    let f = file(&batch);
    let path = f.path().to_str().unwrap();
    let first = run(
        &["classify", path, "--json", "--stages", "--validate"],
        None,
    );
    for _ in 0..3 {
        let again = run(
            &["classify", path, "--json", "--stages", "--validate"],
            None,
        );
        assert_eq!(first.stdout, again.stdout);
    }
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    let labels: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["spin", "b", "spin", "b"]);
}

#[test]
fn suspension_level_one() {
    let out = run(
        &["classify", "--suspension-level", "1", "--json"],
        Some(CASE_B),
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["resolved"], false);
    assert_eq!(v["decomposition"], "Unresolved");
    assert!(v.get("attaching_map").is_none());
    let out = run(&["classify", "--suspension-level", "1"], Some(SPIN));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Sigma M = "), "{text}");
    assert_eq!(
        code(&run(&["classify", "--suspension-level", "3"], Some(SPIN))),
        2
    );
}

#[test]
fn omitted_case_exits_three_but_reports_the_rest() {
    let out = run(
        &["classify", "--json"],
        Some(&format!("[{SPIN},{OMITTED}]")),
    );
    assert_eq!(code(&out), 3);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["branch"], "spin, theta trivial");
    assert_eq!(v[1]["error"], "omitted_case");
}

#[test]
fn schema_errors_exit_two() {
    for bad in [
        "not json",
        r#"{"m":0}"#,
        r#"{"m":0,"d":0,"spin":true,"postnikov_trivial":true,"extra":1}"#,
        r#"{"m":0,"d":0,"spin":false,"sq2_case":"case_a","postnikov_trivial":true}"#,
        r#"{"m":0,"d":0,"spin":true,"theta_on_h1":{"nontrivial":1},"postnikov_trivial":true}"#,
    ] {
        let out = run(&["classify"], Some(bad));
        assert_eq!(code(&out), 2, "{bad}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn missing_file_exits_one() {
    let out = run(&["classify", "/nonexistent/descriptor.json"], None);
    assert_eq!(code(&out), 1);
}

#[test]
fn cohomotopy_reports_both_cokernels() {
    let out = run(&["cohomotopy", "--json", "--summands"], Some(CASE_B));
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pi5_suspension"], Value::Null);
    assert_eq!(v["e_surjective"], Value::Null);
    assert_ne!(v["coker_h2"], v["coker_h2_by_summands"]);
    assert!(v["summands"].as_array().unwrap().len() >= 2);
    let out = run(&["cohomotopy", "--json"], Some(SPIN));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["e_surjective"], true);
    assert_eq!(v["coker_h2"], v["coker_h2_by_summands"]);
}

#[test]
fn normalize_with_oracle() {
    let vector = r#"{"source":"S^4","components":[
        {"target":"S^3","map":{"eta":1}},{"target":"P^4(2)","map":{"i eta":1}}]}"#;
    let out = run(&["normalize", "--json", "--oracle"], Some(vector));
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["oracle"]["agrees"], true);
    let n = v["normal_form"]["components"].as_array().unwrap();
    let nonzero = n
        .iter()
        .filter(|c| !c["map"].as_object().unwrap().is_empty())
        .count();
    assert_eq!(nonzero, 1);

    let again = Command::new(env!("CARGO_BIN_EXE_suspcalc"))
        .args(["normalize", "--json", "--oracle"])
        .env("SUSPCALC_SEED", "5")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(vector.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    let w: Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(w["oracle"]["seed"], 5);
    assert_eq!(w["normal_form"], v["normal_form"]);
    assert_eq!(w["oracle"]["least"], v["oracle"]["least"]);

    let bad = r#"{"source":"S^5","components":[{"target":"S^4","map":{"nu'":1}}]}"#;
    assert_eq!(code(&run(&["normalize"], Some(bad))), 2);
}

#[test]
fn validate_passes_on_valid_input() {
    let out = run(&["validate"], Some(&format!("[{SPIN},{CASE_B},{OMITTED}]")));
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("spin: homology pass"));
    assert!(text.contains("x: omitted"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn pretty_output_round_trips_the_decomposition() {
    let out = run(&["classify"], Some(SPIN));
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix("Sigma^2 M = "))
        .unwrap();
    let w: suspcalc_core::WedgeComplex = line.parse().unwrap();
    assert_eq!(w.to_string(), line);
    assert_eq!(
        w.integral_homology(6),
        suspcalc_core::FgAbelianGroup::free(1)
    );
}

#[test]
fn tables_filters_select_rows() {
    let all = run(&["tables"], None);
    let hopf = run(&["tables", "--filter", "hopf"], None);
    let two = run(&["tables", "--filter", "hopf", "--filter", "ops"], None);
    let count = |o: &Output| o.stdout.iter().filter(|&&b| b == b'\n').count();
    assert!(count(&hopf) < count(&two) && count(&two) < count(&all));
    for line in String::from_utf8(hopf.stdout).unwrap().lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kind"], "hopf");
    }
}
