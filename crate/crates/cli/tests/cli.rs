use std::process::{Command, Output};

use serde_json::Value;

fn crinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn fpq_prints_polynomial() {
    let o = crinv(&["fpq", "7", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x⁷ + y⁷ + 7xy - 14x²y² + 7x³y³");
}

#[test]
fn primetest_verdicts() {
    let o = crinv(&["primetest", "7", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("prime"));
    let o = crinv(&["primetest", "6", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("composite, witness -9"));
}

#[test]
fn signature_of_cyclic_group() {
    let o = crinv(&["signature", "--gamma-pq", "6", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("target: Q(4,1)"), "{text}");
    assert!(text.contains("G = (3 z1²z2²)"), "{text}");

    let doc = json(&crinv(&["signature", "--gamma-pq", "6", "5", "--json"]));
    assert_eq!(doc["target"], serde_json::json!([4, 1]));
    assert_eq!(doc["inertia"]["n_zero"], 0);
}

#[test]
fn signature_sweep_csv() {
    let o = crinv(&["signature", "--family", "gamma-p-1", "--sweep", "3..6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,order,n_plus,n_minus,n_zero,ratio,ratio_num,ratio_den"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn quadmap_verifies() {
    let o = crinv(&["quadmap", "1", "--summary"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Q(2,3) -> Q(8,3), degree 2, verified"));

    let doc = json(&crinv(&["quadmap", "2", "--json"]));
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["target"], serde_json::json!([103, 5]));
    assert_eq!(doc["plus"].as_array().unwrap().len(), 103);
    assert_eq!(doc["remainder"], "0");
}

#[test]
fn invariant_scalar_is_binomial_power() {
    let o = crinv(&["invariant", "--scalar", "6", "--dim", "2"]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["properties"]["all_pass"], true);
    let terms = doc["diagonal"]["terms"].as_array().unwrap();
    let coeffs: Vec<i64> = terms.iter().map(|t| t["coeff"]["c"][0][0].as_i64().unwrap()).collect();
    assert_eq!(coeffs, [1, 6, 15, 20, 15, 6, 1]);
}

#[test]
fn generators_file_matches_builtin_group() {
    // diag(w, w^2) for a primitive cube root w, in the power basis 1, w.
    let gens = r#"[[[{"n":3,"c":[[0,1],[1,1]]},{"n":3,"c":[[0,1],[0,1]]}],
                    [{"n":3,"c":[[0,1],[0,1]]},{"n":3,"c":[[-1,1],[-1,1]]}]]]"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gens.json");
    std::fs::write(&path, gens).unwrap();

    let from_file = json(&crinv(&["invariant", "--generators", path.to_str().unwrap()]));
    let builtin = json(&crinv(&["invariant", "--gamma-pq", "3", "2"]));
    assert_eq!(from_file["group"]["order"], 3);
    assert_eq!(from_file["diagonal"], builtin["diagonal"]);
}

#[test]
fn invariant_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    let o = crinv(&["invariant", "--dihedral", "4", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["group"]["order"], 8);
}

#[test]
fn bad_parameters_exit_four_with_error_json() {
    let o = crinv(&["fpq", "5", "7"]);
    assert_eq!(o.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["exit_code"], 4);
    assert!(err["error"].is_string());

    let o = crinv(&["signature", "--gamma-pq", "6", "5", "--dihedral", "3"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn output_is_deterministic() {
    let args = ["signature", "--twisted-swap", "3", "--json"];
    let a = crinv(&args);
    let b = crinv(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn golden_sweep_columns() {
    let o = crinv(&["sweep", "golden", "--p", "3..5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("p,S_p,S_p_root,gap\n3,"), "{text}");
    assert_eq!(text.lines().count(), 4);

    let o = crinv(&["sweep", "golden", "--p", "2..3"]);
    assert_eq!(o.status.code(), Some(4));
}
