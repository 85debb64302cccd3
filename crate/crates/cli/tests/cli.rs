use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tambara")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, v)
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn identity_biset_preserves_exponential_diagrams() {
    let (code, v) = report(&["verify-phi", "--biset", "identity", "--group", "c2", "--max-size", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert!(check(&v, "psi_after_phi_is_identity")["cases"].as_u64().unwrap() > 100);
}

#[test]
fn fixed_point_suite_on_s3() {
    let (code, v) = report(&["check-tambara", "--functor", "fp", "--group", "s3", "--ring", "zmod:4", "--max-size", "3"]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "distributive_law")["passed"], true);
}

#[test]
fn bad_input_exits_with_two() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("malformed.json");
    std::fs::write(&bad, "{\"group\": ").unwrap();
    let (code, stdout, stderr) = run(&["exp-diagram", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty() && stderr.contains("malformed JSON"));
    assert_eq!(run(&["universe", "--group", "q8", "--max-size", "2"]).0, 2);
    assert_eq!(run(&["check-tambara", "--group", "c2", "--ring", "zmod:0"]).0, 2);
    assert_eq!(run(&["transform", "--group", "c2", "--biset", "ind:c2:c3"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    // a map that is not equivariant
    let skew = dir.join("skew.json");
    std::fs::write(&skew, r#"{"group":"c2","gsets":[{"act":[[0,1],[1,0]]},{"act":[[0,1],[0,1]]}],
        "f":{"values":[0,1],"source":0,"target":1},"p":{"values":[0,1],"source":0,"target":0}}"#).unwrap();
    let (code, _, stderr) = run(&["exp-diagram", "--input", skew.to_str().unwrap()]);
    assert_eq!(code, 2, "{stderr}");
}

#[test]
fn universe_counts_match_orbit_types() {
    for (group, count) in [("trivial", 5), ("c2", 9), ("c3", 7), ("s3", 11)] {
        let (code, v) = report(&["universe", "--group", group, "--max-size", "4"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["count"], count, "{group}");
    }
    let (_, from_file) = report(&["universe", "--group", &data("s3_perms.json"), "--max-size", "4"]);
    assert_eq!(from_file["result"]["count"], 11);
}

#[test]
fn fold_dependent_product_has_four_sections() {
    let (code, v) = report(&["exp-diagram", "--input", &data("fold.json")]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["sections"].as_array().unwrap().len(), 4);
    assert_eq!(r["z"]["act"][0].as_array().unwrap().len(), 8);
    // the swap fixes the two sections that pick matching sheets and exchanges the other two
    assert_eq!(r["pi"]["act"][1], json!([0, 2, 1, 3]));
}

#[test]
fn composite_matches_the_exponential_diagram() {
    let (_, exp) = report(&["exp-diagram", "--input", &data("fold.json")]);
    let r = &exp["result"];
    let n = |k: &str| r[k].as_array().unwrap().len();
    let expected = json!({
        "group": "c2",
        "gsets": [
            { "act": [[0, 1, 2, 3], [1, 0, 3, 2]] },
            r["z"],
            r["pi"],
            { "act": [[0], [0]] },
        ],
        "bispan": {
            "w": { "values": r["lam"], "source": 1, "target": 0 },
            "v": { "values": r["rho"], "source": 1, "target": 2 },
            "u": { "values": r["pi_map"], "source": 2, "target": 3 },
        }
    });
    assert_eq!((n("lam"), n("pi_map")), (8, 4));
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("expected_distributive.json");
    std::fs::write(&path, expected.to_string()).unwrap();
    let (code, v) = report(&["compose", "--input", &data("transfer_then_norm.json"), "--check", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert!(v["result"]["certificate"]["a"].is_array());

    let (code, v) = report(&["compose", "--input", &data("transfer_then_norm.json"), "--check", &data("norm_of_composite.json")]);
    assert_eq!(code, 1);
    assert_eq!(check(&v, "equivalent")["passed"], false);
}

#[test]
fn norm_to_a_point_squares() {
    let (code, v) = report(&["eval", "--input", &data("norm_to_point.json"), "--ring", "zmod:4"]);
    assert_eq!(code, 0);
    for row in v["result"]["table"].as_array().unwrap() {
        let r = row["input"][0].as_u64().unwrap();
        assert_eq!(row["output"], json!([r * r % 4]));
    }
}

#[test]
fn biset_apply_lists_classes() {
    let (code, v) = report(&["biset-apply", "--biset", "ind:s3:c2", "--gset", "regular"]);
    assert_eq!(code, 0);
    let classes = v["result"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 6);
    assert!(classes.iter().all(|c| c["members"].as_array().unwrap().len() == 2));
    let (code, v) = report(&["biset-apply", "--biset", "identity", "--group", "c3", "--gset", &data("regular_c3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["hact"], json!([[0, 1, 2], [1, 2, 0], [2, 0, 1]]));
}

#[test]
fn point_biset_fails_preservation() {
    let (code, v) = report(&["verify-phi", "--biset", &data("point_over_c2.json"), "--max-size", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["right_free"], false);
    assert_eq!(check(&v, "preserves_coproduct")["passed"], true);
    assert_eq!(check(&v, "psi_after_phi_is_identity")["passed"], false);
    assert!(check(&v, "psi_after_phi_is_identity")["witness"].is_string());
}

#[test]
fn quotients_and_fractions() {
    let (code, _) = report(&["quotient", "--group", "c2", "--ring", "zmod:4", "--ideal", &data("even.json")]);
    assert_eq!(code, 0);
    let (code, v) = report(&["quotient", "--group", "c2", "--ring", "zmod:4", "--ideal", "values:0,1"]);
    assert_eq!(code, 1);
    assert_eq!(check(&v, "ideal_additive")["passed"], false);
    let (code, v) = report(&["localize", "--group", "c3", "--ring", "zmod:6", "--subfunctor", &data("powers_of_three.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["localized_ring_size"], 2);
    assert_eq!(run(&["localize", "--functor", "burnside", "--group", "c2", "--subfunctor", "powers:1"]).0, 2);
}

#[test]
fn corollaries_through_the_cli() {
    let base = ["--biset", "ind:s3:c2", "--max-size", "2"];
    let (code, v) = report(&[&["check-cor27", "--ring", "zmod:4", "--ideal", "values:0,2"][..], &base].concat());
    assert_eq!(code, 0, "{v}");
    let (code, v) = report(&[&["check-cor28", "--ring", "zmod:6", "--subfunctor", "powers:3"][..], &base].concat());
    assert_eq!(code, 0, "{v}");
    let (code, _) = report(&["transform", "--functor", "burnside", "--biset", "ind:c2:trivial", "--max-size", "2", "--max-cases", "200"]);
    assert_eq!(code, 0);
}

#[test]
fn output_is_byte_stable_and_timing_is_opt_in() {
    let args = ["check-tambara", "--group", "c3", "--ring", "zmod:6", "--max-size", "3", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a, b);
    assert!(!a.1.contains("timing_ms"));
    let timed = run(&[&args[..], &["--timing"]].concat());
    assert!(timed.1.contains("timing_ms"));
    let text = run(&[&args[..], &["--format", "text"]].concat());
    assert!(text.1.lines().any(|l| l.starts_with("PASS distributive_law")));
}
