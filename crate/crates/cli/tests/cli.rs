use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn nichols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nichols")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_input(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn classify_reports_row_one() {
    let o = nichols(&["classify", fixture("row1.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("row 1 (heck row 1)"), "{}", stdout(&o));
}

#[test]
fn reflect_reproduces_the_triangle() {
    let o = nichols(&["reflect", fixture("a1.toml").to_str().unwrap(), "-i", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "r2: vertices [q, -1, r]; edges 1-2: q^-1, 1-3: q*r, 2-3: r^-1\n");
}

#[test]
fn cartan_without_i_finiteness_exits_one() {
    let o = nichols(&["cartan", fixture("notifinite.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("[NotIFinite]"), "{}", stderr(&o));
    let o = nichols(&["--json", "cartan", fixture("notifinite.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"]["code"], "NotIFinite");
}

#[test]
fn composite_characteristic_is_rejected() {
    let f = temp_input("p = 4\nmatrix = [[\"1\"]]\n");
    let o = nichols(&["--json", "cartan", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"]["code"], "InvalidChar");
    assert_eq!(v["error"]["location"]["line"], 1);
}

#[test]
fn rectangular_matrix_is_a_validation_error() {
    let f = temp_input("p = 5\nmatrix = [[\"1\", \"1\", \"1\"], [\"1\", \"1\", \"1\"]]\n");
    let o = nichols(&["--json", "cartan", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "ValidationError");
}

#[test]
fn malformed_toml_is_a_syntax_error() {
    let f = temp_input("p = 5\nmatrix = [[\"1\"\n");
    let o = nichols(&["cartan", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("SyntaxError[SyntaxError]"), "{}", stderr(&o));
    assert!(stderr(&o).contains("line "));
}

#[test]
fn missing_file_and_bad_flags_exit_two() {
    assert_eq!(nichols(&["cartan", "/nonexistent/input.toml"]).status.code(), Some(2));
    assert_eq!(nichols(&["reflect", fixture("a1.toml").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(nichols(&["reflect", fixture("a1.toml").to_str().unwrap(), "-i", "4"]).status.code(), Some(2));
}

#[test]
fn classify_needs_positive_characteristic() {
    let o = nichols(&["--json", "classify", fixture("notifinite.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["code"], "UnsupportedChar");
}

#[test]
fn non_table_diagram_is_negative() {
    let o = nichols(&["--json", "classify", fixture("hyperbolic.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["status"], "negative");
    assert_eq!(v["result"]["verdict"], "infinite");
    assert_eq!(v["result"]["matches"], Value::Array(vec![]));
    let o = nichols(&["roots", fixture("hyperbolic.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_output_is_versioned_and_deterministic() {
    let path = fixture("row17.toml");
    let a = nichols(&["--json", "orbit", path.to_str().unwrap()]);
    let b = nichols(&["--json", "orbit", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "orbit");
    assert_eq!(v["result"]["points"].as_array().unwrap().len(), 9);
}

#[test]
fn orbit_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("row17.dot");
    let o = nichols(&["orbit", fixture("row17.toml").to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph exchange {"));
    assert_eq!(text.matches(" -- ").count(), 10);
    assert!(stdout(&o).contains("exchange graph: 9 points, 10 edges"));
}

#[test]
fn roots_of_type_b() {
    let o = nichols(&["--json", "roots", fixture("row2.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["verdict"], "finite");
    assert_eq!(v["result"]["points"][0]["positive_count"], 9);
}

#[test]
fn good_neighborhood_of_type_c() {
    let o = nichols(&["--json", "good-neighborhood", fixture("row3.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["kind"], "C3");
    assert_eq!(v["result"]["permutation"], serde_json::json!([1, 2, 3]));
}

#[test]
fn verify_tables_in_characteristic_three() {
    let o = nichols(&["verify-tables", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("11/11 rows pass for p = 3"));
    let o = nichols(&["verify-tables", "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_come_from_flags() {
    let o = nichols(&["--max-points", "3", "orbit", fixture("row17.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("[PointLimitExceeded]"));
}
