//! Command-line behaviour: reports, files and exit codes.

use std::path::PathBuf;
use std::process::Command;

use latticework::cli::{run, EXIT_BUDGET, EXIT_PASS, EXIT_USAGE};
use latticework::constructions::sharp_family;
use latticework::SetFamily;
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("latticework").chain(args.iter().copied()), &mut out, &mut err);
    let report = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, report, String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latticework-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn constructed_families_round_trip() {
    for (name, n, k) in [
        ("sharp", "5", Some("2")),
        ("disconnected", "6", None),
        ("layer", "4", Some("2")),
        ("power-set", "3", None),
    ] {
        let path = scratch(&format!("{name}.json"));
        let path_s = path.display().to_string();
        let mut args = vec!["construct", name, "--n", n, "--out", &path_s];
        if let Some(k) = k {
            args.extend(["--k", k]);
        }
        let (code, report, err) = cli(&args);
        assert_eq!(code, EXIT_PASS, "{name}: {err}");
        assert_eq!(report["results"]["passed"], true);
        let from_file = SetFamily::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let from_report: SetFamily = serde_json::from_value(report["results"]["family"].clone()).unwrap();
        assert_eq!(from_file, from_report);
        assert_eq!(from_file.members(), from_report.members());
        assert_eq!(report["parameters"]["family_hash"], latticework::cli::family_hash(&from_file));
    }
    let path = scratch("sharp51.json");
    cli(&["construct", "sharp", "--n", "5", "--k", "1", "--out", &path.display().to_string()]);
    let parsed = SetFamily::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parsed, sharp_family(5, 1).unwrap());
}

#[test]
fn analyze_reports_structure() {
    let sharp = write("a-sharp.json", &sharp_family(3, 1).unwrap().to_json());
    let (code, r, _) = cli(&["analyze", &sharp]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["component_orders"], serde_json::json!([2, 2]));
    assert_eq!(r["results"]["lubell"], "4/3");
    assert_eq!(r["results"]["skip_count"], 0);
    assert_eq!(r["parameters"]["n"], 3);

    let layer = write("a-layer.json", r#"{"n":4,"sets":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#);
    let (_, r, _) = cli(&["analyze", &layer]);
    assert_eq!(r["results"]["component_count"], 6);
    assert_eq!(r["results"]["lubell"], "1/1");
    assert_eq!(r["results"]["two_chains"], 0);

    let empty = write("a-empty.json", r#"{"n":4,"sets":[]}"#);
    let (_, r, _) = cli(&["analyze", &empty]);
    assert_eq!(r["results"]["size"], 0);
    assert_eq!(r["results"]["lubell"], "0/1");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let bad = write("bad.json", "{\"n\": 3,\n \"sets\": [[1],\n");
    let (code, _, err) = cli(&["analyze", &bad]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line"), "{err}");

    let wide = write("wide.json", r#"{"n":2,"sets":[[3]]}"#);
    assert_eq!(cli(&["analyze", &wide]).0, EXIT_USAGE);
    let huge = write("huge.json", r#"{"n":70,"sets":[]}"#);
    assert_eq!(cli(&["analyze", &huge]).0, EXIT_USAGE);
}

#[test]
fn verify_runs_suites() {
    let sharp = write("v-sharp.json", &sharp_family(5, 1).unwrap().to_json());
    let (code, r, _) = cli(&["verify", "diamond-blym", "--family", &sharp]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["report"]["details"]["sum"], "1/1");
    assert_eq!(r["results"]["report"]["details"]["tight"], true);

    let (code, r, _) = cli(&["verify", "colouring", "--n", "4", "--k", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["passed"], true);

    let (code, r, _) = cli(&["verify", "kk", "--n", "4", "--k", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["report"]["instances"], 63);

    let (code, _, err) = cli(&["verify", "riemann"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown theorem"));
}

#[test]
fn suites_reject_invalid_input() {
    let chain = write("chain.json", r#"{"n":2,"sets":[[],[1]]}"#);
    let (code, _, err) = cli(&["verify", "blym", "--family", &chain]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("antichain"), "{err}");
}

#[test]
fn seeded_runs_are_deterministic() {
    let a = cli(&["--seed", "9", "verify", "fact-ab", "--n", "4", "--samples", "30"]).1;
    let b = cli(&["--seed", "9", "verify", "fact-ab", "--n", "4", "--samples", "30"]).1;
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["parameters"]["seed"], 9);
}

#[test]
fn search_reports_witnesses_and_budgets() {
    let (code, r, _) = cli(&["search", "la", "--n", "4", "--t", "2", "--jobs", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["value"], 6);
    assert_eq!(r["results"]["witness_certified"], true);
    assert_eq!(r["results"]["witness"]["kind"], "family");

    let (code, r, _) = cli(&["search", "lambda-star", "--n", "4", "--t", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["value"], "9/4");

    let (code, r, _) = cli(&["search", "madstar", "--t", "5"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["witness"]["kind"], "graph");

    let (code, r, _) = cli(&["--budget-nodes", "20", "search", "disconnected", "--n", "5"]);
    assert_eq!(code, EXIT_BUDGET);
    assert_eq!(r["results"]["proven_optimal"], false);

    assert_eq!(cli(&["search", "xi-star", "--n", "4"]).0, EXIT_USAGE);
    assert_eq!(cli(&["search", "la", "--n", "9", "--t", "2"]).0, EXIT_USAGE);
}

#[test]
fn reproduce_registered_experiments() {
    for (name, actual) in [("sperner-n3", 3), ("disconnected-n4", 10), ("katona-tarjan-n4", 6)] {
        let (code, r, _) = cli(&["reproduce", name]);
        assert_eq!(code, EXIT_PASS, "{name}");
        assert_eq!(r["results"]["outcome"]["actual"], actual);
        assert_eq!(r["results"]["outcome"]["pass"], true);
    }
    assert_eq!(cli(&["reproduce", "nope"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--budget-nodes", "3", "reproduce", "sperner-n5"]).0, EXIT_BUDGET);
    let (code, r, _) = cli(&["reproduce", "--list"]);
    assert_eq!(code, EXIT_PASS);
    assert!(r["results"]["experiments"].as_array().unwrap().len() >= 10);
}

#[test]
fn normalize_emits_a_trace() {
    let f = write("skippy.json", r#"{"n":3,"sets":[[1],[1,2,3]]}"#);
    let out = scratch("skippy-out.json");
    let (code, r, _) = cli(&["normalize", &f, "--t", "2", "--out", &out.display().to_string()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["trace"], serde_json::json!([[[1, 2], [1, 2, 3]]]));
    assert_eq!(r["results"]["skips_after"], 0);
    let written = SetFamily::from_json(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(written, SetFamily::from_sets(3, &[&[1], &[1, 2]]).unwrap());
}

#[test]
fn boundary_splits_by_component() {
    let fam = scratch("disc4.json");
    cli(&["construct", "disconnected", "--n", "4", "--out", &fam.display().to_string()]);
    let fam = fam.display().to_string();
    let split = write("split.json", r#"{"a":[0],"b":[1]}"#);
    let (code, r, _) = cli(&["boundary", "--family", &fam, "--split-file", &split]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["results"]["excluded_count"], 6);
    assert_eq!(r["results"]["all_hold"], true);

    let bad = write("split-bad.json", r#"{"a":[0],"b":[]}"#);
    assert_eq!(cli(&["boundary", "--family", &fam, "--split-file", &bad]).0, EXIT_USAGE);
}

#[test]
fn text_format_and_usage_errors() {
    let mut out = Vec::new();
    let code = run(
        ["latticework", "--format", "text", "search", "la", "--n", "3", "--t", "1"],
        &mut out,
        &mut Vec::new(),
    );
    assert_eq!(code, EXIT_PASS);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("results.value: 3"), "{text}");
    assert_eq!(cli(&["construct", "sharp", "--n", "4"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--jobs", "x", "analyze", "f"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).0, EXIT_PASS);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_latticework");
    let status = Command::new(bin).args(["reproduce", "sperner-n2"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_PASS));
    let report: Value = serde_json::from_slice(&status.stdout).unwrap();
    assert_eq!(report["results"]["outcome"]["pass"], true);
    let status = Command::new(bin).args(["search", "wat"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}
