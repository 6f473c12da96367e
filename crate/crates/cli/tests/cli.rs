use std::path::{Path, PathBuf};

use ds2_cli::{run, EXIT_DATA, EXIT_OK, EXIT_USAGE};

const ATTRACTION_SUMMARY: &str =
    "The user is looking for an attraction called byard art which is a museum located in the center.";

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ds2(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ds2").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/multiwoz_mini")
}

#[test]
fn parse_prints_state_json() {
    let o = ds2(&["parse"], ATTRACTION_SUMMARY);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let state: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(
        state,
        serde_json::json!({
            "attraction-name": "byard art",
            "attraction-type": "museum",
            "attraction-area": "center"
        })
    );
}

#[test]
fn synth_then_parse_round_trips() {
    let state = r#"{"hotel-area": "dontcare", "hotel-type": "guesthouse", "train-day": "tuesday"}"#;
    let o = ds2(&["synth", "--no-dontcare-concat"], state);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(
        o.stdout.trim(),
        "The user is looking for a place to stay which is a guesthouse. He does not care about the location. Also, he is searching for a train on tuesday."
    );
    let back = ds2(&["parse", "--no-dontcare-concat"], &o.stdout);
    let parsed: serde_json::Value = serde_json::from_str(&back.stdout).unwrap();
    let original: serde_json::Value = serde_json::from_str(state).unwrap();
    assert_eq!(parsed, original);
}

#[test]
fn synth_rejects_invalid_state() {
    let o = ds2(&["synth"], r#"{"hotel-color": "red"}"#);
    assert_eq!(o.code, EXIT_DATA);
    assert!(o.stderr.contains("error"));
    assert_eq!(ds2(&["synth"], "not json").code, EXIT_DATA);
}

#[test]
fn parse_reports_diagnostics_on_stderr() {
    let o = ds2(&["parse"], "The user wants pizza. The user is looking for a taxi to the airport.");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stderr.contains("warning"), "{}", o.stderr);
    assert!(o.stdout.contains("taxi-destination"));
}

#[test]
fn fuzz_ten_thousand_trials() {
    let o = ds2(&["fuzz", "--trials", "10000", "--seed", "0"], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout.trim(), "10000/10000 round-trips ok");
    let o = ds2(&["fuzz", "--trials", "200", "--unnatural", "--order", "shuffled"], "");
    assert_eq!(o.stdout.trim(), "200/200 round-trips ok");
}

#[test]
fn usage_errors_exit_one() {
    let corpus = fixture();
    let corpus = corpus.to_str().unwrap();
    assert_eq!(ds2(&["sample", "--corpus", corpus, "--ratio", "0.02"], "").code, EXIT_USAGE);
    assert_eq!(ds2(&["sample", "--corpus", corpus, "--mode", "ct"], "").code, EXIT_USAGE);
    assert_eq!(ds2(&["sample", "--corpus", corpus, "--version", "2.4"], "").code, EXIT_USAGE);
    assert_eq!(ds2(&["frobnicate"], "").code, EXIT_USAGE);
    assert_eq!(ds2(&["parse", "--order", "random"], "").code, EXIT_USAGE);
    assert_eq!(ds2(&["--help"], "").code, EXIT_OK);
}

#[test]
fn sample_prints_manifest() {
    let corpus = fixture();
    let args = ["sample", "--corpus", corpus.to_str().unwrap(), "--mode", "cd", "--domain", "hotel", "--ratio", "100%", "--seed", "23"];
    let o = ds2(&args, "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let manifest: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(manifest["mode"], "cross_domain");
    assert_eq!(manifest["target_domain"], "hotel");
    assert_eq!(manifest["ratio"], 1.0);
    assert_eq!(manifest["finetune_ids"], serde_json::json!(["SNG0006.json"]));
    assert_eq!(manifest["pretrain_ids"], serde_json::json!(["SNG0001.json"]));
    assert_eq!(ds2(&args, "").stdout, o.stdout);
}

#[test]
fn export_then_eval_gold_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = fixture();
    let corpus = corpus.to_str().unwrap();
    let train = dir.path().join("train.jsonl");
    let o = ds2(&["export", "--corpus", corpus, "--out", train.to_str().unwrap()], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.starts_with("wrote 5 records"), "{}", o.stdout);

    // gold summaries as predictions
    let predictions: String = std::fs::read_to_string(&train)
        .unwrap()
        .lines()
        .map(|l| {
            let r: serde_json::Value = serde_json::from_str(l).unwrap();
            let p = serde_json::json!({
                "dialogue_id": r["dialogue_id"],
                "turn_index": r["turn_index"],
                "predicted_summary": r["gold_summary"],
            });
            p.to_string() + "\n"
        })
        .collect();
    let pred_path = dir.path().join("pred.jsonl");
    std::fs::write(&pred_path, predictions).unwrap();
    let report_path = dir.path().join("report.json");
    let o = ds2(
        &["eval", "--corpus", corpus, "--predictions", pred_path.to_str().unwrap(), "--out", report_path.to_str().unwrap()],
        "",
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["all_domain_jga"], 1.0);
    assert_eq!(report["n_turns"], 5);
}

#[test]
fn export_from_manifest_file() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = fixture();
    let corpus = corpus.to_str().unwrap();
    let manifest = dir.path().join("split.json");
    let o = ds2(&["sample", "--corpus", corpus, "--mode", "ct", "--domain", "restaurant", "--out", manifest.to_str().unwrap()], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let out = dir.path().join("ct.jsonl");
    let o = ds2(
        &["export", "--corpus", corpus, "--split-file", manifest.to_str().unwrap(), "--unnatural", "--out", out.to_str().unwrap()],
        "",
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("The user wants seafood as food of restaurant"));
}

#[test]
fn missing_corpus_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let o = ds2(&["sample", "--corpus", dir.path().to_str().unwrap()], "");
    assert_eq!(o.code, EXIT_DATA);
    assert!(o.stderr.contains("data.json"));
}

#[test]
fn custom_ontology_file() {
    let schema = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/multiwoz5.toml");
    let o = ds2(&["--ontology", schema.to_str().unwrap(), "parse"], ATTRACTION_SUMMARY);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(ds2(&["--ontology", "/nonexistent.toml", "parse"], "").code, EXIT_DATA);
}

#[test]
fn binary_uses_data_dir_fallback() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_ds2"))
        .args(["sample", "--mode", "md", "--ratio", "1.0"])
        .env("DS2_DATA_DIR", fixture())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let manifest: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(manifest["finetune_ids"], serde_json::json!(["SNG0001.json", "SNG0006.json"]));

    let out = std::process::Command::new(env!("CARGO_BIN_EXE_ds2"))
        .args(["sample"])
        .env_remove("DS2_DATA_DIR")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
