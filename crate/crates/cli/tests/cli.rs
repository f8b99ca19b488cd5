mod common;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Output, Stdio};

use common::bin;
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("socialai-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// Runs the binary with whitespace-separated arguments.
fn run(args: &str) -> Output {
    bin()
        .args(args.split_whitespace())
        .output()
        .expect("run binary")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn run_prints_a_report() {
    let out = run("run --env TalkItOut --policy oracle --episodes 20 --seed 5");
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["success_rate"], 1.0);
    assert_eq!(r["n_episodes"], 20);
    assert_eq!(r["seed_base"], 5);
    assert_eq!(r["privileged"], true);
    assert_eq!(r["policy"], "oracle");
}

#[test]
fn threshold_failure_exits_with_two() {
    let out =
        run("run --env DiverseExit --policy random_door --episodes 40 --min-success-rate 0.9");
    assert_eq!(out.status.code(), Some(2));
    let ok = run("run --env Dance --policy oracle --episodes 10 --min-success-rate 1.0");
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn unsupported_policy_is_an_error() {
    let out = run("run --env Dance --policy uniform_coin_answer --episodes 3");
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not defined for Dance"));
}

#[test]
fn traces_written_by_run_replay() {
    let dir = scratch("traces");
    let report = dir.join("report.json");
    let out = run(&format!(
        "run --env Help --role helper --policy oracle --episodes 3 \
         --explo vision --explo-C 2 --unsocial --trace {} --json {}",
        dir.display(),
        report.display()
    ));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        fs::read_to_string(&report).unwrap().trim(),
        String::from_utf8(out.stdout).unwrap().trim()
    );
    let traces: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            p.file_name()
                .unwrap()
                .to_str()
                .unwrap()
                .starts_with("Help-helper-oracle-")
        })
        .collect();
    assert_eq!(traces.len(), 3);
    for t in &traces {
        let out = run(&format!("replay {}", t.display()));
        assert!(out.status.success());
        assert_eq!(json(&out)["verdict"], "identical");
    }
    // tamper with one recorded digest
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&traces[0]).unwrap()).unwrap();
    doc["steps"][0]["digest"] = Value::from("0000000000000000");
    let bad = dir.join("tampered.json");
    fs::write(&bad, doc.to_string()).unwrap();
    let out = run(&format!("replay {}", bad.display()));
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(
        (
            v["verdict"].as_str(),
            v["step"].as_u64(),
            v["field"].as_str()
        ),
        (Some("diverged"), Some(1), Some("digest"))
    );
}

#[test]
fn grammar_export() {
    let g = json(&run("grammar --env SocialEnv"));
    assert_eq!(g["templates"].as_array().unwrap().len(), 8);
    assert_eq!(g["nouns"].as_array().unwrap().len(), 25);
    let t = json(&run("grammar --env TalkItOut"));
    assert_eq!(t["templates"][1], "Open <noun>");
    assert_eq!(t["nouns"][5], "the window");
}

#[test]
fn play_session_writes_its_trace() {
    let dir = scratch("play");
    let trace = dir.join("play.json");
    let mut child = bin()
        .args([
            "play",
            "--env",
            "TalkItOut",
            "--seed",
            "7",
            "--trace",
            trace.to_str().unwrap(),
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"say 1 5\nl\nwhat\nq\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("you say: Open the window"));
    assert!(text.contains("commands:"));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(doc["steps"].as_array().unwrap().len(), 2);
    assert!(doc["outcome"].is_null());
    let out = run(&format!("replay {}", trace.display()));
    assert!(out.status.success());
}
