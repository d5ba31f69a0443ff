//! The `ahp-readiness` command, in-process and as a binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use ahp_readiness::cli::run;
use ahp_readiness::datasets::greece_hierarchy;
use ahp_readiness::scoring::{Assessment, Characterization};
use ahp_readiness::sessions::{consistent_session, synthetic_sessions, SessionFile};
use tempfile::TempDir;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../datasets")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("ahp-readiness").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn session_files(dir: &TempDir, sessions: &[SessionFile]) -> Vec<String> {
    sessions.iter().map(|s| write(dir, &format!("{}.json", s.node), &s.to_json())).collect()
}

#[test]
fn validate_outcomes() {
    let (code, out, _) = cli(&["validate", &data("greece-2019.json")]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = cli(&["validate", "--hierarchy", &data("greece-2019.json")]);
    assert_eq!(code, 0);

    let dir = TempDir::new().unwrap();
    let mut h = greece_hierarchy();
    h.categories[0].criteria.truncate(1);
    h.categories[0].criteria[0].local_weight = 1.0;
    let bad = write(&dir, "bad.json", &h.to_json());
    let (code, out, _) = cli(&["validate", &bad]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 1, "{out}");
    assert!(out.contains("PL"));

    let (code, _, err) = cli(&["validate", "no/such/file.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("no/such/file.json"));
    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(cli(&["validate", &garbage]).0, 2);
}

#[test]
fn score_writes_both_reports() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("reports");
    let (code, out, err) = cli(&[
        "score",
        "--hierarchy",
        &data("greece-2019.json"),
        "--assessment",
        &data("greece-assessment-2019.json"),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "overall 32.2%\n");
    assert!(out_dir.join("Greece-report.json").is_file());
    let md = std::fs::read_to_string(out_dir.join("Greece-report.md")).unwrap();
    assert!(md.contains("0.03096"));
}

#[test]
fn score_domain_failures() {
    let dir = TempDir::new().unwrap();
    let h = greece_hierarchy();
    let hp = data("greece-2019.json");

    let best = write(&dir, "best.json", &Assessment::uniform("best", &h, Characterization::VeryHigh).to_json());
    let (code, out, _) = cli(&["score", "--hierarchy", &hp, "--assessment", &best, "--out", dir.path().to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "overall 100.0%\n"));

    let mut missing = Assessment::uniform("gap", &h, Characterization::Low);
    missing.entries.retain(|e| e.criterion != "TI3" && e.criterion != "CA6");
    let p = write(&dir, "missing.json", &missing.to_json());
    let (code, _, err) = cli(&["score", "--hierarchy", &hp, "--assessment", &p, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("TI3") && err.contains("CA6"), "{err}");

    let mut empty = Assessment::uniform("none", &h, Characterization::Low);
    for e in &mut empty.entries {
        if e.criterion.starts_with("CA") {
            *e = ahp_readiness::scoring::AssessmentEntry::excluded(e.criterion.clone(), "no data");
        }
    }
    let p = write(&dir, "empty.json", &empty.to_json());
    let (code, _, err) = cli(&["score", "--hierarchy", &hp, "--assessment", &p, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("CA"), "{err}");

    let (code, _, _) = cli(&["score", "--hierarchy", &hp, "--assessment", "nope.json"]);
    assert_eq!(code, 2);
}

#[test]
fn sensitivity_table() {
    let (code, out, _) = cli(&[
        "sensitivity",
        "--hierarchy",
        &data("greece-2019.json"),
        "--assessment",
        &data("greece-assessment-2019.json"),
    ]);
    assert_eq!(code, 0);
    let first = out.lines().next().unwrap();
    assert!(first.starts_with("TI4") && first.ends_with("+0.0305"), "{first}");

    let dir = TempDir::new().unwrap();
    let best = write(
        &dir,
        "best.json",
        &Assessment::uniform("best", &greece_hierarchy(), Characterization::VeryHigh).to_json(),
    );
    let (code, out, _) = cli(&["sensitivity", "--hierarchy", &data("greece-2019.json"), "--assessment", &best]);
    assert_eq!(code, 0);
    assert_eq!(out, "no criterion can be raised\n");
}

#[test]
fn weights_from_synthetic_sessions() {
    let dir = TempDir::new().unwrap();
    let h = greece_hierarchy();
    let files = session_files(&dir, &synthetic_sessions(&h, 5).unwrap());
    let mut args = vec!["weights", "--hierarchy"];
    let hp = data("greece-2019.json");
    args.push(&hp);
    args.push("--sessions");
    args.extend(files.iter().map(String::as_str));
    let (code, out, err) = cli(&args);
    assert_eq!(code, 0, "{err}");
    assert_eq!(err.lines().count(), 5, "{err}");
    assert!(err.contains("root: cr 0.000 consensus 100.0% (acceptable)"));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = doc["table"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 27);
    let ti4 = rows.iter().find(|r| r["criterion_id"] == "TI4").unwrap();
    assert!((ti4["aggregated_weight"].as_f64().unwrap() - 0.408 * 0.299).abs() < 1e-6);
    assert_eq!(ti4["rank"], 1);

    let out_dir = dir.path().join("w");
    args.extend(["--method", "rgmm", "--out", out_dir.to_str().unwrap()]);
    let (code, out, _) = cli(&args);
    assert_eq!(code, 0);
    assert!(out.contains("wrote"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("weights.json")).unwrap()).unwrap();
    assert_eq!(doc["method"], "rgmm");
}

#[test]
fn weights_refuse_cyclic_session_unless_overridden() {
    let dir = TempDir::new().unwrap();
    let h = greece_hierarchy();
    let mut sessions = synthetic_sessions(&h, 1).unwrap();
    let cyclic: SessionFile = serde_json::from_value(serde_json::json!({
        "node": "root",
        "items": ["PL", "TI", "I", "CA"],
        "participants": [{ "id": "P1", "judgments": [
            { "row": 1, "col": 2, "value": 9 }, { "row": 2, "col": 3, "value": 9 }, { "row": 1, "col": 3, "value": "1/9" },
            { "row": 1, "col": 4, "value": 1 }, { "row": 2, "col": 4, "value": 1 }, { "row": 3, "col": 4, "value": 1 }
        ]}]
    }))
    .unwrap();
    sessions[0] = cyclic;
    let files = session_files(&dir, &sessions);
    let mut args = vec!["weights", "--sessions"];
    args.extend(files.iter().map(String::as_str));
    let (code, _, err) = cli(&args);
    assert_eq!(code, 1);
    assert!(err.contains("inconsistent") && err.contains("root"), "{err}");

    args.push("--allow-inconsistent");
    let (code, _, err) = cli(&args);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("warning: session \"root\" is inconsistent"), "{err}");
    // one participant per session
    assert!(err.contains("consensus 100.0%") && err.contains("K=1"), "{err}");
}

#[test]
fn three_item_cyclic_session_cites_its_ratio() {
    let dir = TempDir::new().unwrap();
    let items: Vec<String> = ["A", "B", "C"].map(String::from).to_vec();
    let root = consistent_session("root", &["X".into(), "Y".into()], &[0.5, 0.5], 1).unwrap();
    let mut x = consistent_session("X", &items, &[0.2, 0.3, 0.5], 1).unwrap();
    x.participants[0].judgments = serde_json::from_value(serde_json::json!([
        { "row": "A", "col": "B", "value": 9 }, { "row": "B", "col": "C", "value": 9 }, { "row": "C", "col": "A", "value": 9 }
    ]))
    .unwrap();
    let y = consistent_session("Y", &["D".into(), "E".into()], &[0.4, 0.6], 1).unwrap();
    let files = session_files(&dir, &[root, x, y]);
    let mut args = vec!["weights", "--sessions"];
    args.extend(files.iter().map(String::as_str));
    let (code, _, err) = cli(&args);
    assert_eq!(code, 1);
    assert!(err.contains("cr = 6.13"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["score", "--hierarchy"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["weights", "--sessions", "a.json", "--method", "median"]).0, 2);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("sensitivity"));
}

#[test]
fn binary_uses_output_env_var() {
    let dir = TempDir::new().unwrap();
    let out: PathBuf = dir.path().join("env-out");
    let o = Command::new(env!("CARGO_BIN_EXE_ahp-readiness"))
        .args([
            "score",
            "--hierarchy",
            &data("greece-2019.json"),
            "--assessment",
            &data("greece-assessment-2019.json"),
        ])
        .env("AHP_READINESS_OUT", &out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "overall 32.2%\n");
    assert!(out.join("Greece-report.md").is_file());

    let o = Command::new(env!("CARGO_BIN_EXE_ahp-readiness"))
        .args(["validate", "missing.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
