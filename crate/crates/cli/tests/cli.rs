use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_haarmoments"))
        .args(args)
        .env_remove("HAARMOMENTS_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn matrix_file(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn weingarten_table_as_json() {
    let v = json(&["wg", "2", "3"]);
    assert_eq!(v, serde_json::json!({ "(1,1)": "1/8", "(2)": "-1/24" }));
    let v = json(&["wg", "3", "2"]);
    // d < k keeps only (3) and (2,1): 1/144 + 2·(4/72)
    assert_eq!(v["(1,1,1)"], "17/144");
    let text = stdout(&run(&["wg", "2", "3"]));
    assert_eq!(text, "(2)\t-1/24\n(1,1)\t1/8\n");
}

#[test]
fn moment_example() {
    let out = run(&["moment", "--rows", "1,2", "--cols", "1,2", "--rows2", "1,2", "--cols2", "1,2", "-d", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1/15");
    let v = json(&["moment", "--rows", "1,1", "--cols", "1,1", "--rows2", "1,1", "--cols2", "1,1", "-d", "2"]);
    // ∫|U₁₁|⁴ = 2/(d(d+1))
    assert_eq!(v["value"], "1/3");
}

#[test]
fn json_output_round_trips() {
    let cases: &[&[&str]] = &[
        &["wg", "4", "3"],
        &["chartable", "4"],
        &["kron", "2,1", "2,1", "2,1"],
        &["schur", "2,1", "--x", "1/2,-3,2"],
        &["quad", "--n", "2", "--moment", "1", "--power", "2"],
        &["sample", "-d", "2", "-n", "2"],
        &["verify", "weingarten", "-k", "2", "-d", "2"],
    ];
    for args in cases {
        let mut all = args.to_vec();
        all.extend(["--format", "json"]);
        let emitted = stdout(&run(&all));
        let parsed: Value = serde_json::from_str(&emitted).unwrap();
        let again = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(again.trim_end(), emitted.trim_end(), "{args:?}");
        let reparsed: Value = serde_json::from_str(&again).unwrap();
        assert_eq!(reparsed, parsed);
    }
}

#[test]
fn exact_values_are_strings() {
    let v = json(&["chartable", "3"]);
    assert_eq!(v["k"], 3);
    assert_eq!(v["partitions"], serde_json::json!(["3", "2,1", "1,1,1"]));
    assert_eq!(v["table"][1], serde_json::json!(["-1", "0", "2"]));
    assert_eq!(json(&["kron", "2,1", "2,1", "2,1"])["value"], "1");
    assert_eq!(json(&["schur", "2", "--x", "2,3"])["value"], "19");
    assert_eq!(json(&["schur", "2,1", "-d", "3"])["value"], "8");
    let v = json(&["schur", "2,1", "--x", "1,-1/2", "--y", "2,3"]);
    assert_eq!(v["value"], v["expanded"]);
}

#[test]
fn quadrature_reports_exact_value() {
    let v = json(&["quad", "--n", "3", "--moment", "2", "--power", "2"]);
    assert_eq!(v["exact"], "7");
    assert!((v["value"].as_f64().unwrap() - 7.0).abs() < 1e-8);
}

#[test]
fn sampling_is_seeded() {
    let a = json(&["sample", "-d", "3", "-n", "2", "--seed", "5"]);
    let b = json(&["sample", "-d", "3", "-n", "2", "--seed", "5"]);
    let c = json(&["sample", "-d", "3", "-n", "2", "--seed", "6"]);
    assert_eq!(a, b);
    assert_ne!(a["samples"], c["samples"]);
    assert!(a["samples"][1]["unitarity_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn twirl_power_and_operator_modes() {
    let f = matrix_file(r#"[[["1", "0"], [0, 0]], [[0, 0], [0, 0]]]"#);
    let path = f.path().to_str().unwrap();
    let v = json(&["twirl", "--matrix", path, "-k", "2"]);
    // |0⟩⟨0|^{⊗2} twirls to P_∨ / 3 at d = 2
    assert_eq!(v["coefficients"]["(2)"], "1/3");
    assert_eq!(v["coefficients"]["(1,1)"], "0");
    assert_eq!(v["operator"][0][0], serde_json::json!(["1/3", "0"]));
    assert_eq!(v["operator"][1][2], serde_json::json!(["1/6", "0"]));

    let swap = matrix_file("[[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]]");
    let v = json(&["twirl", "--matrix", swap.path().to_str().unwrap(), "-k", "2", "--mode", "operator"]);
    assert_eq!(v["d"], 2);
    assert_eq!(v["operator"][1][2], serde_json::json!(["1", "0"]));
    let bad = run(&["twirl", "--matrix", path, "-k", "3", "--mode", "operator"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn malformed_matrix_names_position() {
    let f = matrix_file(r#"[[1, 2], [3, "q"]]"#);
    let out = run(&["twirl", "--matrix", f.path().to_str().unwrap(), "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row 1, col 1"), "{err}");
    let out = run(&["twirl", "--matrix", "/nonexistent/matrix.json", "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["wg"][..],
        &["wg", "x", "2"],
        &["nonsense"],
        &["wg", "2", "3", "--format", "yaml"],
        &["wg", "2", "3", "--cap", "8"],
        &["moment", "--rows", "1", "--cols", "1", "--rows2", "1", "--cols2", "5", "-d", "2"],
        &["kron", "2", "1,1,1", "2,1"],
        &["schur", "3,4", "-d", "2"],
        &["mcverify", "nope"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let out = run(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("depolarizing"));
    let out = run(&["mcverify", "nope"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("uu_bar"));
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_haarmoments"))
        .args(["twirl", "--matrix", "/dev/null", "-k", "1"])
        .env("HAARMOMENTS_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_haarmoments"))
        .args(["verify", "projectors", "-k", "3", "-d", "3"])
        .env("HAARMOMENTS_CAP", "16")
        .output()
        .unwrap();
    // 27 > 16 is a resource error, reported as a failed check
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("exceeds the cap"), "{}", stdout(&out));
}

#[test]
fn mcverify_report_fields() {
    let v = json(&["mcverify", "tr2", "-k", "3", "-d", "2", "--samples", "20000"]);
    assert_eq!(v["identity"], "tr2");
    assert_eq!(v["exact"], "2");
    assert_eq!(v["pass"], true);
    assert!(v["z"].as_f64().unwrap() <= 5.0);
    assert!(v["stderr"].as_f64().unwrap() > 0.0);
    let v = json(&["mcverify", "swap", "-d", "2", "--samples", "20000"]);
    assert!(v["entry"].is_array());
}

#[test]
fn verify_all_passes_at_default_size() {
    let out = run(&["verify", "all", "-k", "3", "-d", "2"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 15);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
    // registration order
    assert!(lines[0].contains("depolarizing") && lines[14].contains("weyl_normalization"));
}

#[test]
fn verify_reports_printed_fourth_moment_branch() {
    let v = json(&["verify", "trace_moment4", "-k", "2", "-d", "3"]);
    assert_eq!(v["pass"], true);
    let detail = v["reports"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("closed form 7") && detail.contains("printed middle branch gives 9"), "{detail}");
}
