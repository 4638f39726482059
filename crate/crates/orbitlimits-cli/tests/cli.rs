use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbitlimits"))
}

fn write_input(tag: &str, doc: &Value) -> PathBuf {
    let p = std::env::temp_dir().join(format!("orbitlimits-cli-{}-{tag}.json", std::process::id()));
    std::fs::write(&p, doc.to_string()).unwrap();
    p
}

fn run(args: &[&str], tag: &str, doc: Option<&Value>) -> Output {
    let mut c = bin();
    c.args(args);
    if let Some(d) = doc {
        c.arg("--input").arg(write_input(tag, d));
    }
    c.output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], json!(1));
    v
}

fn det3() -> Value {
    json!({"schema": 1, "form": {"nvars": 9, "degree": 3,
        "expr": "x1*x5*x9 - x1*x6*x8 - x2*x4*x9 + x2*x6*x7 + x3*x4*x8 - x3*x5*x7"}})
}

fn o2() -> Value {
    json!({"schema": 1, "form": {"nvars": 2, "degree": 4, "expr": "(y^2+z^2)^2", "names": ["z", "y"]}, "ps": [1, 0]})
}

#[test]
fn stabilizer_of_det3_has_dimension_16() {
    let v = json_of(&run(&["stabilizer"], "det3", Some(&det3())));
    assert_eq!(v["dimension"], json!(16));
    assert_eq!(v["verified"], json!(true));
}

#[test]
fn stabilizer_of_zero_form_is_all_of_gl() {
    let doc = json!({"schema": 1, "form": {"nvars": 3, "degree": 2, "terms": []}});
    let v = json_of(&run(&["stabilizer"], "zero", Some(&doc)));
    assert_eq!(v["dimension"], json!(9));
}

#[test]
fn limit_o2_reports_k0_and_feasible_extension() {
    let v = json_of(&run(&["limit"], "o2", Some(&o2())));
    let a = &v["analysis"];
    assert_eq!(a["k0"].as_array().unwrap().len(), 1);
    assert_eq!(a["kt"].as_array().unwrap().len(), 1);
    assert_eq!(a["extension"]["feasible"], json!(true));
    let k0 = &a["k0"][0];
    assert_eq!(k0[1][0], json!("0"));
    assert_eq!(k0[0][0], json!("0"));
    assert_eq!(k0[1][1], json!("0"));
}

#[test]
fn limit_along_trivial_ps_is_the_form_itself() {
    let mut doc = o2();
    doc["ps"] = json!([2, 2]);
    let v = json_of(&run(&["limit"], "trivial", Some(&doc)));
    assert_eq!(v["g"], v["input"]);
    assert_eq!(v["analysis"], Value::Null);
}

#[test]
fn limit_det3_lambda4_matches_table_row() {
    let mut doc = det3();
    doc["ps"] = json!([1, 1, 1, 1, 0, 0, 0, 0, 0]);
    let out = run(&["limit"], "det3l4", Some(&doc));
    let v = json_of(&out);
    let a = &v["analysis"];
    assert_eq!(a["k0_graded_dims"], json!({"-1": 5, "0": 10, "1": 1}));
    assert_eq!(a["triple_stabilizer_dims"], json!({"-1": 1, "0": 6, "1": 1}));
    assert_eq!(a["h_dim"], json!(21));
}

#[test]
fn closure_verdicts_of_the_final_example() {
    let x1 = json!([{"eig": "1", "sizes": [1, 1]}, {"eig": "-1", "sizes": [1]}]);
    let x2 = json!([{"eig": "1", "sizes": [2]}, {"eig": "-1", "sizes": [1]}]);
    let doc = |spec: &Value, p: Value| json!({"schema": 1, "spec": spec, "partition": p});
    let v = json_of(&run(&["closure"], "x1y1", Some(&doc(&x1, json!([3])))));
    assert_eq!(v["contained"], json!(false));
    assert_eq!(v["evidence"]["kind"], json!("separator"));
    assert_eq!((v["evidence"]["k"].clone(), v["evidence"]["r"].clone()), (json!(1), json!(1)));
    let v = json_of(&run(&["closure"], "x2y1", Some(&doc(&x2, json!([3])))));
    assert_eq!(v["contained"], json!(true));
    assert_eq!(v["evidence"]["kind"], json!("family"));
    let v = json_of(&run(&["closure"], "x1y2", Some(&doc(&x1, json!([1, 2])))));
    assert_eq!(v["contained"], json!(true));
}

#[test]
fn jn_slice_report_is_ok() {
    let doc = json!({"schema": 1, "kind": "jn", "n": 4, "samples": 5});
    let v = json_of(&run(&["slice", "--seed", "3"], "jn4", Some(&doc)));
    assert_eq!(v["all_ok"], json!(true));
}

#[test]
fn sphere_curvature_is_exact() {
    let doc = json!({"schema": 1, "kind": "sphere", "n": 3, "r": "2"});
    let v = json_of(&run(&["curvature"], "sphere", Some(&doc)));
    assert_eq!(v["ricci"], json!([["1/4", "0"], ["0", "1/4"]]));
    assert_eq!(v["riemann_antisymmetric"], json!(true));
}

#[test]
fn kempf_on_a_jordan_block_matches_the_grid() {
    let doc = json!({"schema": 1, "matrix": [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]});
    let v = json_of(&run(&["kempf"], "j3", Some(&doc)));
    let mu = v["mu"].as_f64().unwrap();
    let grid = v["grid"]["mu"].as_f64().unwrap();
    assert!((mu - grid).abs() < 1e-3, "{mu} vs {grid}");
}

#[test]
fn reproduce_single_id_passes() {
    let v = json_of(&run(&["reproduce", "o3"], "", None));
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["reports"][0]["id"], json!("o3"));
}

#[test]
fn table_format_prints_the_structure_constants() {
    let out = run(&["reproduce", "o3", "--format", "table"], "", None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[k1,k2] = (-t^2)·k3"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["reproduce", "no-such-id"], "", None).status.code(), Some(2));
    assert_eq!(run(&["stabilizer"], "", None).status.code(), Some(2));
    let no_schema = json!({"form": {"nvars": 1, "degree": 1, "expr": "x1"}});
    assert_eq!(run(&["stabilizer"], "noschema", Some(&no_schema)).status.code(), Some(2));
    let decimal = json!({"schema": 1, "form": {"nvars": 1, "degree": 1, "terms": [{"exp": [1], "coef": "0.5"}]}});
    assert_eq!(run(&["stabilizer"], "decimal", Some(&decimal)).status.code(), Some(2));
    let wrong_version = json!({"schema": 2, "matrix": [["1"]]});
    assert_eq!(run(&["stabilizer"], "v2", Some(&wrong_version)).status.code(), Some(2));
    // Zero point: well-formed input, but the local model does not exist.
    let zero = json!({"schema": 1, "form": {"nvars": 2, "degree": 2, "terms": []}});
    assert_eq!(run(&["local-model"], "zeropt", Some(&zero)).status.code(), Some(3));
}

#[test]
fn outputs_are_deterministic() {
    for (args, tag, doc) in [
        (vec!["limit"], "det-o2", o2()),
        (vec!["slice", "--seed", "11"], "det-jab", json!({"schema": 1, "kind": "jab", "a": 2, "b": 1, "samples": 4})),
        (vec!["kempf", "--seed", "5"], "det-kempf", json!({"schema": 1, "form": {"nvars": 2, "degree": 2, "expr": "x1*x2"}})),
    ] {
        let a = run(&args, tag, Some(&doc));
        let b = run(&args, tag, Some(&doc));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{tag}");
    }
}

#[test]
fn limit_point_round_trips_as_input() {
    let v = json_of(&run(&["limit"], "rt-o2", Some(&o2())));
    let g = v["g"].clone();
    let back = json!({"schema": 1, "form": g, "ps": [1, 0]});
    let w = json_of(&run(&["limit"], "rt-g", Some(&back)));
    // g is an eigenvector of λ: its own limit.
    assert_eq!(w["g"], g);
}

#[test]
fn local_model_round_trips_through_explicit_policy() {
    let doc = json!({"schema": 1, "form": {"nvars": 2, "degree": 2, "expr": "x^2", "names": ["x", "y"]},
        "algebra": "sl", "slice_point": ["0", "0", "1"]});
    let v = json_of(&run(&["local-model"], "lm", Some(&doc)));
    assert_eq!(v["slice"]["stabilizer"], json!([[["0", "-1"], ["1", "0"]]]));
    let mut explicit = doc.clone();
    explicit["s"] = v["s"].clone();
    explicit["n"] = v["n"].clone();
    let w = json_of(&run(&["local-model", "--policy", "explicit"], "lm-explicit", Some(&explicit)));
    assert_eq!(v, w);
}
