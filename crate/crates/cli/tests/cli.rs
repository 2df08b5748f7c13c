use std::process::Command;

use serde_json::Value;

fn starpi(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_starpi")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn starpi_with_threads(args: &[&str], threads: &str) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_starpi")).args(args).env("STARPI_THREADS", threads).output().unwrap();
    String::from_utf8(out.stdout).unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid json")
}

#[test]
fn even_z_product_is_central() {
    let (code, out, _) = starpi(&["check", "--poly", "z1*z2", "--involution", "star", "--field", "F5", "--property", "central"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("holds"));
}

#[test]
fn odd_z_product_is_not_central() {
    let (code, out, _) =
        starpi(&["check", "--poly", "z1*z2*z3", "--involution", "star", "--field", "F5", "--property", "central"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness: "), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["check", "--poly", "y1*("],
        vec!["check", "--poly", "y1", "--field", "F4"],
        vec!["check", "--poly", "y1", "--field", "Q", "--mode", "exhaustive"],
        vec!["check", "--poly", "y1", "--involution", "t"],
        vec!["verify-theorem", "NoSuchTheorem"],
        vec!["verify-theorem", "IdStarInfinite", "--field", "F3"],
        vec!["verify-theorem", "CentralS", "--involution", "star"],
        vec!["verify-theorem", "IdStarFinite", "--field", "F3", "--coefficients", "some"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = starpi(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn identity_check_json() {
    let (code, out, _) = starpi(&["check", "--poly", "[z1,z2]", "--output", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["holds"], Value::Bool(true));
    assert_eq!(v["property"], "identity");
    assert!(v.get("witness").is_none());
    let (code, out, _) = starpi(&["check", "--poly", "[z1,y1]", "--field", "Q", "--output", "json"]);
    assert_eq!(code, 1);
    assert!(json(&out)["witness"].as_str().unwrap().starts_with("generic value"));
}

#[test]
fn s_theorem_suite_passes() {
    let (code, out, _) = starpi(&["verify-theorem", "CentralS", "--field", "F3", "--max-degree", "4", "--output", "json"]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    for c in checks.iter().filter(|c| c["name"].as_str().unwrap().starts_with("slice")) {
        assert_eq!(c["dims"]["central"], c["dims"]["claimed"]);
    }
}

#[test]
fn finite_star_identities_suite_passes() {
    let (code, out, _) = starpi(&["verify-theorem", "IdStarFinite", "--field", "F5"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS  generator")).count(), 9);
}

#[test]
fn char0_central_suite_passes() {
    let (code, out, _) = starpi(&["verify-theorem", "CentralStarChar0", "--field", "Q", "--max-degree", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("WARN") && !out.contains("FAIL"));
}

#[test]
fn char_p_suite_needs_generic_mode() {
    let (code, out, _) = starpi(&["verify-theorem", "CentralStarInfCharP", "--field", "F3", "--generic", "--max-degree", "3"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn basis_failure_exits_1() {
    let (code, out, _) = starpi(&["verify-theorem", "BasisStarFinite", "--field", "F3", "--max-degree", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL  slice (z1:3)"), "{out}");
}

fn slice_row<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["slices"].as_array().unwrap().iter().find(|r| r["slice"] == name).expect("slice present")
}

#[test]
fn central_space_rows() {
    let (code, out, _) =
        starpi(&["central-space", "--field", "F3", "--involution", "star", "--max-degree", "2", "--output", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let row = slice_row(&v, "(z1:1,z2:1)");
    assert_eq!(row["central"], 2);
    // [z1,z2] is an identity.
    assert_eq!(row["identity"], 1);

    let (_, out, _) = starpi(&["central-space", "--field", "F3", "--max-degree", "0", "--output", "json"]);
    let v = json(&out);
    assert_eq!(v["slices"].as_array().unwrap().len(), 1);
    assert_eq!(slice_row(&v, "()")["central"], 1);

    let (_, out, _) = starpi(&["central-space", "--involution", "s", "--field", "F3", "--max-degree", "1", "--output", "json"]);
    let v = json(&out);
    assert_eq!(slice_row(&v, "(y1:1)")["central"], 1);
    assert_eq!(slice_row(&v, "(z1:1)")["central"], 0);
    assert!(slice_row(&v, "(z1:1)").get("basis").is_none());
}

#[test]
fn central_space_bases() {
    let (_, out, _) = starpi(&["central-space", "--field", "F3", "--max-degree", "2", "--bases"]);
    assert!(out.contains("    z1^2"), "{out}");
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify-theorem", "CentralStarFinite", "--field", "F3", "--max-degree", "3", "--output", "json"];
    let a = strip_timing(json(&starpi_with_threads(&args, "1")));
    let b = strip_timing(json(&starpi_with_threads(&args, "4")));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());

    let args = ["central-space", "--field", "F5", "--max-degree", "3", "--output", "json", "--bases"];
    assert_eq!(starpi_with_threads(&args, "1"), starpi_with_threads(&args, "3"));
}

#[test]
fn report_schema() {
    let (_, out, _) = starpi(&["verify-theorem", "EvenZLemma", "--field", "F3", "--output", "json"]);
    let v = json(&out);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 5);
    for key in ["theorem", "field", "mode", "checks", "elapsed_ms"] {
        assert!(keys.contains(&key), "{key}");
    }
    assert!(v["elapsed_ms"].is_u64());
    for c in v["checks"].as_array().unwrap() {
        assert!(c["name"].is_string());
        assert!(["pass", "warn", "fail"].contains(&c["status"].as_str().unwrap()));
    }
}

#[test]
fn catalog_dump_lists_every_theorem() {
    let (code, out, _) = starpi(&["catalog-dump", "--field", "F3", "--output", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 14);
    let power = entries.iter().find(|e| e["theorem"] == "PowerPQLemma").unwrap();
    assert_eq!(power["generators"][0], "y1^9 - y1^3");
}

#[test]
fn help_exits_0() {
    let (code, out, _) = starpi(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-theorem"));
}
