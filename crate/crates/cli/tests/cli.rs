use std::process::{Command, Output};

use serde_json::Value;

fn m3p(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m3p"))
        .args(args)
        .output()
        .expect("failed to run m3p")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn enumerate_lists_the_class() {
    let out = m3p(&["enumerate", "--p", "4", "--N", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["count"], 6);
    assert_eq!(v["partitions"].as_array().unwrap().len(), 6);
    assert_eq!(v["partitions"][0], serde_json::json!([1, 1]));
}

#[test]
fn ideal_character() {
    let out = m3p(&["char", "--target", "ideal3", "--p", "4", "--order", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        strings(&v["coefficients"]),
        ["0", "0", "1", "2", "3", "4", "6"]
    );
}

#[test]
fn gen_and_recursion_agree() {
    let gen = m3p(&[
        "char", "--target", "gen", "--p", "5", "--N", "6", "--n", "3", "--order", "20",
    ]);
    let rec = m3p(&[
        "char",
        "--target",
        "recursion",
        "--p",
        "5",
        "--N",
        "6",
        "--n",
        "3",
        "--order",
        "20",
    ]);
    assert_eq!(
        stdout_json(&gen)["coefficients"],
        stdout_json(&rec)["coefficients"]
    );
}

#[test]
fn finitized_is_keyed_by_particle_number() {
    let out = m3p(&[
        "char",
        "--target",
        "finitized",
        "--p",
        "4",
        "--N",
        "3",
        "--order",
        "10",
    ]);
    let v = stdout_json(&out);
    assert_eq!(
        strings(&v["by_n"]["2"]["coefficients"]),
        ["0", "0", "1", "1", "2", "1", "1", "0", "0", "0"]
    );
}

#[test]
fn bijection_round_trip() {
    let out = m3p(&["bijection", "--p", "4", "--N", "4", "--decompose", "4,3,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let lambda: Vec<String> = v["lambda"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let mu: Vec<String> = v["mu"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let back = m3p(&[
        "bijection",
        "--p",
        "4",
        "--N",
        "4",
        "--compose",
        &lambda.join(","),
        "--mu",
        &mu.join(","),
    ]);
    assert_eq!(
        back.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&back.stderr)
    );
    assert_eq!(stdout_json(&back)["nu"], serde_json::json!([4, 3, 1]));
}

#[test]
fn bijection_sweep_passes() {
    let out = m3p(&["bijection", "--p", "5", "--N", "5", "--sweep", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["classes"].as_array().unwrap().len(), 5 * 4);
}

#[test]
fn phi3_at_four() {
    let out = m3p(&["phi3", "--p", "4"]);
    let v = stdout_json(&out);
    assert_eq!(
        v["polynomial"],
        serde_json::json!([[[1, 1, 0], "-1"], [[2, 0, 0], "1"]])
    );
    let out = m3p(&["phi3", "--p", "7", "--d", "4"]);
    assert_eq!(stdout_json(&out)["dimension"], 0);
}

#[test]
fn verify_all_at_four() {
    let out = m3p(&["verify", "--check", "all", "--p", "4", "--dmax", "12"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["passed"], true);
}

#[test]
fn verify_output_is_deterministic() {
    let args = [
        "verify",
        "--check",
        "relations,independence",
        "--p",
        "7",
        "--dmax",
        "12",
    ];
    let a = m3p(&args);
    let b = m3p(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_report_is_written() {
    let path = std::env::temp_dir().join(format!("m3p-report-{}.json", std::process::id()));
    let out = m3p(&[
        "verify",
        "--check",
        "ideal-char",
        "--p",
        "5",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(report["command"], "verify");
    assert!(report["checks"][0]["wall_ms"].is_u64());
    assert_eq!(report["payload"]["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["enumerate", "--p", "6", "--N", "3", "--n", "2"][..],
        &["enumerate", "--p", "4", "--N", "0", "--n", "2"],
        &["char", "--target", "ideal3", "--p", "4", "--order", "0"],
        &["char", "--target", "gen", "--p", "4"],
        &["verify", "--check", "nonsense"],
        &["verify", "--check", "independence", "--p", "5"],
        &["bijection", "--p", "4", "--N", "4", "--decompose", "4,x"],
        &["bijection", "--p", "4", "--N", "4", "--decompose", "1,2"],
        &["frobnicate"],
    ] {
        let out = m3p(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
