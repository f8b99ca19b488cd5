//! Golden transcripts replayed against the server over both transports.
//! `UPDATE_GOLDEN=1 cargo test -p socialai-cli --test protocol` rewrites them.

mod common;

use std::fs;

use common::{golden_files, over_stdio, tcp_session, TcpServer, Transcript};
use serde_json::Value;

#[test]
fn golden_transcripts_over_stdio_and_tcp() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let server = TcpServer::start();
    let files = golden_files();
    assert!(!files.is_empty());
    for path in files {
        let mut t = Transcript::load(&path);
        let stdio = over_stdio(&t.requests);
        let tcp = server.session(&t.requests);
        assert_eq!(stdio, tcp, "{}: transports disagree", path.display());
        if update {
            t.responses = stdio;
            fs::write(&path, t.render()).unwrap();
            continue;
        }
        assert_eq!(
            stdio.len(),
            t.responses.len(),
            "{}: reply count",
            path.display()
        );
        for (i, (got, want)) in stdio.iter().zip(&t.responses).enumerate() {
            assert_eq!(got, want, "{} reply {}", path.display(), i + 1);
        }
    }
}

#[test]
fn every_reply_is_one_json_object_with_ok_first() {
    for path in golden_files() {
        for line in Transcript::load(&path).responses {
            assert!(line.starts_with("{\"ok\":"), "{line}");
            let v: Value = serde_json::from_str(&line).unwrap();
            if v["ok"] == false {
                assert!(v["error"].is_string() && v["message"].is_string());
            }
        }
    }
}

#[test]
fn concurrent_tcp_sessions_are_isolated() {
    let server = TcpServer::start();
    let script: Vec<String> = [
        r#"{"cmd":"reset","env":"ShowMe","seed":21}"#,
        r#"{"cmd":"step","action":[1,null,null]}"#,
        r#"{"cmd":"step","action":[3,null,null]}"#,
    ]
    .map(String::from)
    .to_vec();
    let expected = server.session(&script);
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let addr = server.addr.clone();
            let script = script.clone();
            std::thread::spawn(move || tcp_session(&addr, &script))
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), expected);
    }
}
