use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.wdg.json"))
}

fn ntc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let out = ntc(args);
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("{e}: {text} / {}", String::from_utf8_lossy(&out.stderr)));
    (code, value)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_genus_one_m() {
    let f = fixture("ex4_4_m");
    let (code, r) = json_of(&["graph", "analyze", path_str(&f)]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["cycle"], serde_json::json!({"E1": 1, "E2": 2}));
    assert_eq!(r["results"]["canonical_pairing"], 0);
    assert_eq!(r["results"]["chi"], 1);
    assert_eq!(r["verdicts"]["r1_pg_criterion"]["holds"], true);
    assert_eq!(
        r["verdicts"]["summary"],
        "good p_g-type (r=1) criterion holds"
    );
    assert!(r["warnings"][0]
        .as_str()
        .unwrap()
        .contains("Cohen-Macaulay"));
    assert_eq!(r["schema_version"], 1);
}

#[test]
fn analyze_genus_one_m_squared() {
    let f = fixture("ex4_4_m2");
    let (code, r) = json_of(&["graph", "analyze", path_str(&f)]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["cycle"], serde_json::json!({"E": 2}));
    assert_eq!(r["results"]["canonical_pairing"], 2);
    assert_eq!(r["verdicts"]["r1_pg_criterion"]["holds"], false);
}

#[test]
fn analyze_degree5_chain() {
    let f = fixture("ex5_11_1");
    let (_, r) = json_of(&["graph", "analyze", path_str(&f)]);
    assert_eq!(r["results"]["self_intersection"], -10);
    assert_eq!(r["results"]["chi"], 0);
    assert_eq!(r["verdicts"]["r2_elliptic_criterion"]["holds"], true);
    assert_eq!(r["verdicts"]["criterion_solution_r"], 2);
    let (_, r) = json_of(&["graph", "analyze", path_str(&f), "--r", "2"]);
    assert_eq!(r["verdicts"]["criterion_at_r"]["holds"], true);
    let (_, r) = json_of(&["graph", "analyze", path_str(&f), "--r", "3"]);
    assert_eq!(r["verdicts"]["criterion_at_r"]["holds"], false);
    assert_eq!(
        ntc(&["graph", "analyze", path_str(&f), "--r", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn analyze_needs_arrows() {
    let f = fixture("double_edge");
    let out = ntc(&["graph", "analyze", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("arrow"));
}

#[test]
fn check_reports_minors() {
    let f = fixture("ex5_11_1");
    let (code, r) = json_of(&["graph", "check", path_str(&f)]);
    assert_eq!(code, 0);
    assert_eq!(
        r["results"]["negated_leading_minors"],
        serde_json::json!([10, 9, 8, 7, 6, 5])
    );
    assert_eq!(r["verdicts"]["negative_definite"], true);
    assert_eq!(r["results"]["canonical"], fs::read_to_string(&f).unwrap());
}

#[test]
fn diagnostics_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.wdg.json");
    fs::write(&bad, "{\"vertices\": [{\"id\": \"a\", \"self\": 1}]}").unwrap();
    let out = ntc(&["graph", "check", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.wdg.json:1:35: error[E006]"), "{err}");
    assert!(out.stdout.is_empty());

    let missing = dir.path().join("missing.wdg.json");
    assert_eq!(
        ntc(&["graph", "check", path_str(&missing)]).status.code(),
        Some(2)
    );
}

#[test]
fn dual_and_fundamental() {
    let f = fixture("ex5_11_1");
    let (_, r) = json_of(&["graph", "dual", path_str(&f), "E0"]);
    assert_eq!(r["results"]["dual"]["E4"], "4/5");
    assert_eq!(r["results"]["integral"], false);
    assert_eq!(
        ntc(&["graph", "dual", path_str(&f), "E9"]).status.code(),
        Some(2)
    );
    let (_, r) = json_of(&["graph", "fundamental", path_str(&f)]);
    assert_eq!(r["results"]["fundamental_cycle"]["E0"], 1);
}

#[test]
fn enumerate_cone_of_degree5() {
    let f = fixture("homog_d5");
    let (code, r) = json_of(&["graph", "enum", path_str(&f), "--mode", "zk"]);
    assert_eq!(code, 0);
    let chis: Vec<i64> = r["results"]["cycles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["chi"].as_i64().unwrap())
        .collect();
    assert_eq!(chis, vec![-5, -5, 0]);
    assert_eq!(r["results"]["cycles"][2]["cycle"]["C"], 3);
    assert_eq!(r["results"]["cycles"][2]["criterion_r"], 2);

    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    fs::write(&w, "{\"C\": 1}").unwrap();
    let (_, r) = json_of(&[
        "graph",
        "enum",
        path_str(&f),
        "--mode",
        "below",
        "--bound",
        path_str(&w),
    ]);
    assert_eq!(r["results"]["count"], 0);
    let bad = ntc(&[
        "graph",
        "enum",
        path_str(&f),
        "--mode",
        "zk",
        "--bound",
        path_str(&w),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn enumerate_genus_one_pair_is_empty() {
    // Z_K = E1 there, and every anti-nef cycle dominates E1 + E2.
    let f = fixture("ex4_4_m");
    let (_, r) = json_of(&["graph", "enum", path_str(&f), "--mode", "zk"]);
    assert_eq!(r["results"]["count"], 0);
    assert_eq!(
        r["results"]["canonical_cycle"],
        serde_json::json!({"E1": 1, "E2": 0})
    );
}

#[test]
fn chimin_with_and_without_bound() {
    let f = fixture("homog_d5");
    let (_, r) = json_of(&["graph", "chimin", path_str(&f)]);
    assert_eq!(r["results"]["chi_min"], -5);
    assert_eq!(r["results"]["witness"]["C"], 1);
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b.json");
    fs::write(&b, "{\"C\": 0}").unwrap();
    assert_eq!(
        ntc(&["graph", "chimin", path_str(&f), "--bound", path_str(&b)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn brieskorn_types() {
    let (code, r) = json_of(&["brieskorn", "3", "5", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["r"], 3);
    assert_eq!(r["results"]["b_sequence"], serde_json::json!([1, 1, 0, 1]));
    assert_eq!(r["verdicts"]["gorenstein"], false);
    assert_eq!(r["warnings"], serde_json::json!([]));
    let (_, r) = json_of(&["brieskorn", "3", "6", "6"]);
    assert_eq!(r["results"]["r"], 4);
    assert_eq!(
        r["results"]["b_sequence"],
        serde_json::json!([1, 0, 1, 0, 1])
    );
    assert_eq!(r["verdicts"]["gorenstein"], true);
    assert_eq!(ntc(&["brieskorn", "5", "3", "3"]).status.code(), Some(2));
    assert_eq!(ntc(&["brieskorn", "3", "5"]).status.code(), Some(2));
}

#[test]
fn brieskorn_scan_is_clean() {
    let (code, r) = json_of(&["brieskorn", "scan", "--max", "12"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["violations"], serde_json::json!([]));
    assert_eq!(r["verdicts"]["clean"], true);
    assert_eq!(
        ntc(&["brieskorn", "scan", "--max", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn homogeneous_commands() {
    let (code, r) = json_of(&["homog", "classify", "5"]);
    assert_eq!(code, 0);
    assert_eq!(
        r["results"]["labels"],
        serde_json::json!(["I(L)", "m", "m^3"])
    );
    assert_eq!(r["verdicts"]["matches_expected"], true);
    let (_, r) = json_of(&["homog", "classify", "4"]);
    assert_eq!(r["results"]["labels"], serde_json::json!(["m", "m^2"]));
    let (_, r) = json_of(&["homog", "classify", "6"]);
    assert_eq!(r["results"]["verified"], false);
    assert!(r["verdicts"]["matches_expected"].is_null());
    assert_eq!(ntc(&["homog", "classify", "9"]).status.code(), Some(2));
    assert_eq!(ntc(&["homog", "classify", "2"]).status.code(), Some(2));

    let (_, r) = json_of(&["homog", "power", "5", "3"]);
    assert_eq!(r["verdicts"]["gorenstein"], true);
    assert_eq!(r["results"]["br"], 2);
    assert_eq!(ntc(&["homog", "power", "5", "6"]).status.code(), Some(2));

    let (_, r) = json_of(&["homog", "il", "5"]);
    assert_eq!(
        (
            &r["results"]["chi"],
            &r["results"]["q"],
            &r["results"]["colength"],
            &r["results"]["colength_square"]
        ),
        (
            &Value::from(0),
            &Value::from(7),
            &Value::from(3),
            &Value::from(13)
        )
    );
}

#[test]
fn reports_are_deterministic() {
    let f = fixture("ex5_11_2");
    let a = ntc(&["graph", "enum", path_str(&f), "--mode", "zk"]);
    let b = ntc(&["graph", "enum", path_str(&f), "--mode", "zk"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn out_and_human_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = ntc(&["brieskorn", "3", "6", "6", "--out", path_str(&out)]);
    assert_eq!(run.status.code(), Some(0));
    assert!(run.stdout.is_empty());
    let written: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["command"], "brieskorn");

    let human = ntc(&["--human", "homog", "il", "5"]);
    let text = String::from_utf8(human.stdout).unwrap();
    assert!(text.starts_with("ntc homog il\n"));
    assert!(text.contains("colength_square  13"));
}

#[test]
fn verify_paper_passes() {
    let (code, r) = json_of(&["verify-paper", "--max", "10"]);
    assert_eq!(code, 0);
    assert!(r["results"]["total"].as_u64().unwrap() >= 12);
    assert_eq!(r["results"]["passed"], r["results"]["total"]);
}

#[test]
fn verify_paper_catches_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "ex4_4_m",
        "ex4_4_m2",
        "ex5_11_1",
        "ex5_11_2",
        "homog_d3",
        "homog_d4",
        "homog_d5",
        "a1_rdp",
        "double_edge",
    ] {
        fs::copy(fixture(name), dir.path().join(format!("{name}.wdg.json"))).unwrap();
    }
    let (code, _) = json_of(&[
        "verify-paper",
        "--max",
        "6",
        "--fixtures",
        path_str(dir.path()),
    ]);
    assert_eq!(code, 0);

    let target = dir.path().join("ex5_11_1.wdg.json");
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    doc["edges"].as_array_mut().unwrap().remove(2);
    fs::write(&target, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let (code, r) = json_of(&[
        "verify-paper",
        "--max",
        "6",
        "--fixtures",
        path_str(dir.path()),
    ]);
    assert_eq!(code, 3);
    let failed: Vec<&str> = r["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"graph-degree5-chains"), "{failed:?}");
    assert!(r["warnings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w.as_str().unwrap().contains("degree-5 chain")));
}
