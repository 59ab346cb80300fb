use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn isgcoh(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_isgcoh"));
    for a in args {
        match a.strip_prefix('@') {
            Some(file) => cmd.arg(data(file)),
            None => cmd.arg(a),
        };
    }
    cmd.env_remove("ISGCOH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn validate_accepts_fixture_bundle() {
    let o = isgcoh(&[
        "validate",
        "--semigroup",
        "@z2.json",
        "--module",
        "@z2_module.json",
        "--cochain",
        "@z2_ggg.json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn validate_rejects_non_associative_table() {
    let o = isgcoh(&["validate", "--semigroup", "@bad_assoc.json", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["exit_code"], 2);
}

#[test]
fn validate_rejects_value_outside_component() {
    let o = isgcoh(&[
        "validate",
        "--semigroup",
        "@chain2.json",
        "--module",
        "@chain2_module.json",
        "--cochain",
        "@chain2_outside_component.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_json_reports_position() {
    let o = isgcoh(&["validate", "--semigroup", "@malformed.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn cohomology_of_z2_has_two_classes() {
    let o = isgcoh(&[
        "cohomology",
        "--semigroup",
        "@z2.json",
        "--module",
        "@z2_module.json",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["order"], 2);
    assert_eq!(v["cocycles"], 8);
    assert_eq!(v["coboundaries"], 4);
}

#[test]
fn cohomology_of_chain_is_trivial() {
    for extra in [&[][..], &["--order-preserving"][..]] {
        let mut args = vec![
            "cohomology",
            "--semigroup",
            "@chain2.json",
            "--module",
            "@chain2_module.json",
            "--json",
        ];
        args.extend_from_slice(extra);
        let o = isgcoh(&args);
        assert_eq!(json(&o)["order"], 1);
    }
}

#[test]
fn tiny_budget_is_reported() {
    let o = isgcoh(&[
        "cohomology",
        "--semigroup",
        "@z2.json",
        "--module",
        "@z2_module.json",
        "--budget",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn roundtrip_passes_in_both_pipelines() {
    for mode in ["theorem", "extension"] {
        let o = isgcoh(&[
            "roundtrip",
            "--semigroup",
            "@z2_chain2.json",
            "--module",
            "@z2_chain2_module.json",
            "--cocycle",
            "@z2_chain2_nontrivial.json",
            "--mode",
            mode,
            "--samples",
            "500",
            "--json",
        ]);
        assert_eq!(o.status.code(), Some(0), "{mode}: {}", stdout(&o));
        let v = json(&o);
        assert_eq!(v["passed"], true);
        assert_eq!(v["pipeline"], mode);
        assert_eq!(v["input"], v["extracted"]);
    }
}

#[test]
fn roundtrip_rejects_non_cocycle() {
    let o = isgcoh(&[
        "roundtrip",
        "--semigroup",
        "@z2.json",
        "--module",
        "@z2_module.json",
        "--cocycle",
        "@z2_not_cocycle.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn roundtrip_needs_f_inverse_monoid() {
    let o = isgcoh(&[
        "roundtrip",
        "--semigroup",
        "@sim2.json",
        "--module",
        "@sim2_module.json",
        "--cocycle",
        "@trivial3.json",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"], "not-f-inverse");
}

#[test]
fn roundtrip_json_is_deterministic_per_seed() {
    let run = |seed: &str| {
        isgcoh(&[
            "roundtrip",
            "--semigroup",
            "@z2.json",
            "--module",
            "@z2_module.json",
            "--cocycle",
            "@z2_ggg.json",
            "--mode",
            "extension",
            "--samples",
            "300",
            "--seed",
            seed,
            "--json",
        ])
        .stdout
    };
    assert_eq!(run("3"), run("3"));
}
