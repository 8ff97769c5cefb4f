use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cmreg"))
}

fn write_problem(dir: &TempDir, name: &str, vars: &[&str], field: &str, ideal: &[&str]) -> PathBuf {
    let coeffs: Value = if field == "QQ" {
        Value::from("QQ")
    } else {
        serde_json::json!({ "GF": field.parse::<u64>().unwrap() })
    };
    let body = serde_json::json!({
        "ring": { "variables": vars, "coefficients": coeffs },
        "ideal": ideal,
    });
    let path = dir.path().join(name);
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

fn run(args: &[&str], file: &Path) -> Output {
    bin().args(args).arg(file).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reg_of_linear_power_ideal() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(&dir, "a.json", &["x", "y"], "QQ", &["x^2", "x*y"]);
    let out = run(&["reg"], &f);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("reg(I) = 2, reg(R/I) = 1"), "{}", stdout(&out));
}

#[test]
fn reg_is_seed_independent() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(
        &dir,
        "t.json",
        &["x", "y", "z", "w"],
        "32003",
        &["x*z-y^2", "y*w-z^2", "x*w-y*z"],
    );
    let first = stdout(&run(&["reg", "--seed", "1"], &f));
    let second = stdout(&run(&["reg", "--seed", "2"], &f));
    let line = |s: &str| s.lines().next().unwrap().to_string();
    assert_eq!(line(&first), "reg(I) = 2, reg(R/I) = 1");
    assert_eq!(line(&first), line(&second));
}

#[test]
fn unit_and_zero_ideals() {
    let dir = TempDir::new().unwrap();
    let unit = write_problem(&dir, "u.json", &["x", "y"], "QQ", &["1"]);
    let out = run(&["reg"], &unit);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("reg(I) = 0, reg(R/I) = -inf"), "{}", stdout(&out));

    let zero = write_problem(&dir, "z.json", &["x", "y"], "QQ", &["0"]);
    let out = run(&["reg"], &zero);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("reg(I) = -inf, reg(R/I) = 0"), "{}", stdout(&out));
}

#[test]
fn non_homogeneous_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(&dir, "n.json", &["x", "y"], "QQ", &["x+y^2"]);
    let out = run(&["reg"], &f);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not homogeneous"), "{}", stderr(&out));
}

#[test]
fn malformed_file_exits_2() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"ring": {"variables": ["x"]}, "ideal": ["x"]}"#).unwrap();
    assert_eq!(run(&["reg"], &path).status.code(), Some(2));
    let f = write_problem(&dir, "v.json", &["x", "y"], "QQ", &["x*q"]);
    assert_eq!(run(&["reg"], &f).status.code(), Some(2));
}

#[test]
fn small_field_needs_opt_in() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(&dir, "s.json", &["x", "y"], "7", &["x^2", "x*y"]);
    assert_eq!(run(&["reg"], &f).status.code(), Some(3));
    let out = run(&["reg", "--allow-small-field"], &f);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("reg(I) = 2"));
}

#[test]
fn powers_json_report() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(&dir, "a.json", &["x", "y"], "QQ", &["x^2", "x*y"]);
    let json = dir.path().join("out.json");
    let out = run(&["powers", "--max-n", "5", "--json", json.to_str().unwrap()], &f);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = read_json(&json);
    assert_eq!(v["command"], "powers");
    let r = &v["result"];
    assert_eq!(r["reg_sequence"], serde_json::json!([2, 4, 6, 8, 10]));
    assert_eq!(r["rho"]["rho"], 2);
    assert_eq!(r["rho"]["capped"], false);
    assert_eq!(r["tail"]["d"], 2);
    assert_eq!(r["tail"]["e"], 0);
    assert_eq!(r["tail_status"], "tail observed");
    assert_eq!(r["slope_verdict"], "equal");
}

#[test]
fn powers_of_unit_ideal_is_degenerate() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(&dir, "u.json", &["x", "y"], "QQ", &["x", "1"]);
    let json = dir.path().join("out.json");
    let out = run(&["powers", "--json", json.to_str().unwrap()], &f);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(read_json(&json)["result"]["degenerate"], true);
}

#[test]
fn capped_reduction_search_warns() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(
        &dir,
        "b.json",
        &["x", "y", "z"],
        "32003",
        &["x^2", "y^2", "z^2", "x*y*z"],
    );
    let json = dir.path().join("out.json");
    let out = run(
        &["powers", "--cap", "0", "--max-n", "3", "--json", json.to_str().unwrap()],
        &f,
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("warning"), "{}", stdout(&out));
    let r = &read_json(&json)["result"];
    assert_eq!(r["rho"]["rho"], 3);
    assert_eq!(r["rho"]["capped"], true);
    assert_eq!(r["slope_verdict"], "at_most_capped");
}

#[test]
fn rho_with_witness() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(
        &dir,
        "b.json",
        &["x", "y", "z"],
        "32003",
        &["x^2", "y^2", "z^2", "x*y*z"],
    );
    let json = dir.path().join("rho.json");
    let out = run(&["rho", "--json", json.to_str().unwrap()], &f);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("rho(I) = 2"), "{}", stdout(&out));
    let w = &read_json(&json)["result"]["witness"];
    let mut gens: Vec<String> = w["ideal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap().to_string())
        .collect();
    gens.sort();
    assert_eq!(gens, ["x^2", "y^2", "z^2"]);
    assert_eq!(w["n"], 1);
}

#[test]
fn closure_powers_of_monomial_ideal() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(&dir, "c.json", &["x", "y"], "QQ", &["x^2", "y^3"]);
    let json = dir.path().join("cl.json");
    let out = run(
        &["closure-powers", "--max-n", "4", "--json", json.to_str().unwrap()],
        &f,
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = &read_json(&json)["result"];
    assert_eq!(r["filtration"], "closure");
    assert_eq!(r["reg_sequence"], serde_json::json!([3, 6, 9, 12]));
    assert_eq!(r["stability"], serde_json::json!([true, true, true]));
    let first: Vec<&str> = r["closure_generators"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap())
        .collect();
    assert!(first.contains(&"x*y^2"), "{first:?}");
}

#[test]
fn closure_powers_rejects_non_monomial() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(&dir, "d.json", &["x", "y"], "QQ", &["x^2-y^2"]);
    let out = run(&["closure-powers"], &f);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("monomial ideals only"), "{}", stderr(&out));
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(
        &dir,
        "b.json",
        &["x", "y", "z"],
        "32003",
        &["x^2", "y^2", "z^2", "x*y*z"],
    );
    let mut reports = Vec::new();
    for k in 0..2 {
        let json = dir.path().join(format!("r{k}.json"));
        let out = run(
            &[
                "powers",
                "--max-n",
                "3",
                "--seed",
                "7",
                "--json",
                json.to_str().unwrap(),
            ],
            &f,
        );
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let mut v = read_json(&json);
        v.as_object_mut().unwrap().remove("wall_time_ms");
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn echoed_ideal_reparses() {
    let dir = TempDir::new().unwrap();
    let f = write_problem(
        &dir,
        "t.json",
        &["x", "y", "z", "w"],
        "QQ",
        &["x*z - y^2", "y*w-z^2", "x*w - y*z"],
    );
    let json = dir.path().join("r.json");
    let out = run(&["reg", "--json", json.to_str().unwrap()], &f);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = read_json(&json);
    let gens: Vec<&str> = v["input"]["ideal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap())
        .collect();
    let again = write_problem(&dir, "t2.json", &["x", "y", "z", "w"], "QQ", &gens);
    let out2 = run(&["reg"], &again);
    assert_eq!(stdout(&out2).lines().next(), stdout(&out).lines().next());
}
