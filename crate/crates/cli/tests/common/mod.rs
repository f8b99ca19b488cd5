//! Helpers shared by the CLI test targets: driving the `socialai` binary.
#![allow(dead_code)]

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Stdio};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_socialai"))
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// A transcript: `> request` lines each followed by the expected `< response`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub requests: Vec<String>,
    pub responses: Vec<String>,
}

impl Transcript {
    pub fn load(path: &Path) -> Transcript {
        let text = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let mut t = Transcript {
            requests: Vec::new(),
            responses: Vec::new(),
        };
        for line in text.lines() {
            if let Some(r) = line.strip_prefix("> ") {
                t.requests.push(r.to_string());
            } else if let Some(r) = line.strip_prefix("< ") {
                t.responses.push(r.to_string());
            }
        }
        t
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, req) in self.requests.iter().enumerate() {
            out.push_str(&format!("> {req}\n"));
            if let Some(resp) = self.responses.get(i) {
                out.push_str(&format!("< {resp}\n"));
            }
        }
        out
    }
}

pub fn golden_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
        .collect();
    files.sort();
    files
}

/// Sends every request to `serve --stdio` in one go and collects the replies.
pub fn over_stdio(requests: &[String]) -> Vec<String> {
    let mut child = bin()
        .args(["serve", "--stdio"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn server");
    {
        let mut stdin = child.stdin.take().unwrap();
        for r in requests {
            writeln!(stdin, "{r}").unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    assert!(
        out.status.success(),
        "server failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

/// One request at a time over a fresh connection, waiting for each reply.
pub fn tcp_session(addr: &str, requests: &[String]) -> Vec<String> {
    let stream = TcpStream::connect(addr).unwrap();
    stream.set_nodelay(true).unwrap();
    let mut reader = BufReader::new(stream.try_clone().unwrap());
    let mut writer = stream;
    let mut replies = Vec::new();
    for r in requests {
        writeln!(writer, "{r}").unwrap();
        let mut line = String::new();
        if reader.read_line(&mut line).unwrap() == 0 {
            break;
        }
        replies.push(line.trim_end_matches('\n').to_string());
    }
    replies
}

pub struct TcpServer {
    child: Child,
    pub addr: String,
}

impl TcpServer {
    pub fn start() -> TcpServer {
        let mut child = bin()
            .args(["serve", "--tcp", "0"])
            .stdout(Stdio::null())
            .stderr(Stdio::piped())
            .spawn()
            .expect("spawn server");
        let mut stderr = BufReader::new(child.stderr.take().unwrap());
        let mut line = String::new();
        stderr.read_line(&mut line).unwrap();
        let addr = line
            .trim()
            .strip_prefix("listening on ")
            .unwrap_or_else(|| panic!("unexpected banner {line:?}"))
            .to_string();
        TcpServer { child, addr }
    }

    pub fn session(&self, requests: &[String]) -> Vec<String> {
        tcp_session(&self.addr, requests)
    }
}

impl Drop for TcpServer {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}
