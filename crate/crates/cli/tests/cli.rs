use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_aodebound"))
        .args(args)
        .output()
        .unwrap();
    let stdout = String::from_utf8(o.stdout).unwrap();
    let stderr = String::from_utf8(o.stderr).unwrap();
    let text = if stdout.trim().is_empty() {
        &stderr
    } else {
        &stdout
    };
    let v = serde_json::from_str(text).unwrap_or(Value::Null);
    (o.status.code().unwrap(), v, stderr)
}

fn ok(args: &[&str]) -> Value {
    let (code, v, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    v
}

#[test]
fn analyze_reports_index_and_comparability() {
    let v = ok(&["analyze", "y*y' + y^3 + t"]);
    assert_eq!(v["ms_index"], "1");
    assert_eq!(v["maximally_comparable"], false);
    assert_eq!(v["positive_index"], true);
    assert_eq!(ok(&["analyze", "t*y' - 3*y"])["ms_index"], "0");
    assert_eq!(ok(&["analyze", "y'^2 + y"])["maximally_comparable"], true);
}

#[test]
fn bound_lists_the_chain() {
    let v = ok(&["bound", "y*y' + y^3 + t"]);
    for key in ["n", "n_tilde", "C", "final_bound"] {
        assert!(
            v.get(key).is_some_and(Value::is_string),
            "missing {key} in {v}"
        );
    }
}

#[test]
fn solve_finds_the_planted_example() {
    let v = ok(&["solve", "2*y' + t*y^3 + y^2", "--cap", "2"]);
    assert_eq!(v["solutions"], serde_json::json!(["-2/t", "1/t"]));
    assert_eq!(v["constants"], serde_json::json!(["0"]));
    assert_eq!(v["complete_up_to_cap"], true);
    assert!(v.get("warning").is_none());
}

#[test]
fn solve_without_cap_warns() {
    let v = ok(&["solve", "y' - y^3"]);
    assert_eq!(v["cap"], "6");
    assert!(v["warning"].as_str().unwrap().contains("6"));
}

#[test]
fn solve_reports_families() {
    let v = ok(&["solve", "t*y' - 2*y", "--cap", "2"]);
    assert_eq!(v["families"][0]["general"], "c*t^2");
}

#[test]
fn cusp_singularity_and_resolution() {
    let v = ok(&["curve", "singularities", "x1^2*x2 - x0^3"]);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0]["point"], serde_json::json!(["0", "0", "1"]));
    assert_eq!(pts[0]["multiplicity"], "2");
    assert_eq!(pts[0]["ordinary"], false);
    assert_eq!(
        ok(&["curve", "quad", "x1^2*x2 - x0^3"])["transform"],
        "x0^3 - x1^2*x2"
    );
    assert_eq!(
        ok(&["curve", "resolve", "x1^2*x2 - x0^3"])["trace"]["s"],
        "1"
    );
}

#[test]
fn heights_of_each_kind() {
    assert_eq!(ok(&["height", "ratfunc", "(t^2+1)/t"])["height"], "2");
    assert_eq!(ok(&["height", "point", "t, 1, t^2"])["height"], "2");
    assert_eq!(
        ok(&["height", "poly", "x0^2 - (t^3+1)*x0 + t^3"])["height"],
        "3"
    );
}

#[test]
fn parse_errors_exit_2_with_position() {
    let (code, v, _) = run(&["analyze", "y*"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "parse_error");
    assert_eq!(v["error"]["line"], "1");
    assert_eq!(v["error"]["column"], "3");
    assert_eq!(v["error"]["exit_code"], "2");
}

#[test]
fn precondition_exits_3() {
    let (code, v, _) = run(&["bound", "t*y' - 3*y"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["code"], "nonpositive_index");
}

#[test]
fn oversized_cap_exits_4() {
    let (code, v, _) = run(&["solve", "y' - y^3", "--cap", "100000"]);
    assert_eq!(code, 4);
    assert_eq!(v["error"]["code"], "resource_budget");
}

#[test]
fn corpus_mode_emits_one_line_per_equation() {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/equations.txt");
    let o = Command::new(env!("CARGO_BIN_EXE_aodebound"))
        .args(["analyze", "--corpus"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(o.status.success());
    let eqs = std::fs::read_to_string(&file).unwrap();
    let expected = eqs
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .count();
    let lines: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), expected);
    assert!(lines.iter().all(|v| v["ms_index"].is_string()));
}
