//! Newline-delimited JSON protocol for driving episodes from other processes.
//!
//! Each request is one JSON object with a `cmd` field; each gets exactly one
//! response line. Requests:
//!
//! | cmd | fields | success payload |
//! |---|---|---|
//! | `hello` | `version` | `protocol`, `engine` |
//! | `reset` | `env`, `seed`, optional `role`, `explo`, `explo_C`, `explo_T`, `explo_M`, `explo_weight`, `unsocial` | `obs`, `info` |
//! | `step` | `action`: `[primitive, template, noun]`, integers or `null` | `obs`, `reward`, `done`, `info` |
//! | `grammar` | optional `env` (defaults to the open episode's) | `grammar` |
//! | `close` | | ends the session |
//!
//! Failures are `{"ok":false,"error":CODE,"message":TEXT}` and leave the
//! session usable. Codes: `bad_request`, `unknown_env`, `no_episode`,
//! `episode_done`, `malformed_action`, `out_of_range`, `rejected_action`,
//! `protocol_version_mismatch`.

use std::io::{self, BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::thread;

use serde::Serialize;
use serde_json::Value;

use super::trace::ENGINE_VERSION;
use crate::env::{EnvError, EnvId, EnvSpec, Outcome, Role, StepInfo};
use crate::grammar::{GrammarDoc, RawAction};
use crate::observation::Observation;
use crate::shaping::{BonusKind, BonusParams, ShapedEpisode, WrapperConfig};
use crate::Reward;

pub const PROTOCOL_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
struct Failure {
    ok: bool,
    error: &'static str,
    message: String,
}

fn failure(error: &'static str, message: impl Into<String>) -> String {
    to_line(&Failure {
        ok: false,
        error,
        message: message.into(),
    })
}

fn to_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("responses serialize")
}

#[derive(Serialize)]
struct Hello {
    ok: bool,
    protocol: u32,
    engine: &'static str,
}

#[derive(Serialize)]
struct ResetInfo {
    env: &'static str,
    active: &'static str,
    role: Role,
    seed: u64,
    t_max: u32,
}

#[derive(Serialize)]
struct ResetReply<'a> {
    ok: bool,
    obs: &'a Observation,
    info: ResetInfo,
}

#[derive(Serialize)]
struct WireStepInfo {
    t: u32,
    t_max: u32,
    active: &'static str,
    outcome: Option<Outcome>,
    extrinsic: Reward,
    intrinsic: Reward,
}

#[derive(Serialize)]
struct StepReply<'a> {
    ok: bool,
    obs: &'a Observation,
    reward: Reward,
    done: bool,
    info: WireStepInfo,
}

#[derive(Serialize)]
struct GrammarReply {
    ok: bool,
    grammar: GrammarDoc,
}

#[derive(Serialize)]
struct Closed {
    ok: bool,
    closed: bool,
}

/// One client's episode stream.
#[derive(Default)]
pub struct Session {
    episode: Option<ShapedEpisode>,
}

/// Reply line plus whether the session should end.
pub struct Reply {
    pub line: String,
    pub close: bool,
}

impl Reply {
    fn more(line: String) -> Self {
        Reply { line, close: false }
    }
}

fn env_failure(e: &EnvError) -> String {
    failure(e.code(), e.to_string())
}

fn field_f64(req: &Value, key: &str) -> Result<Option<f64>, String> {
    match req.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_f64()
            .filter(|x| *x > 0.0)
            .map(Some)
            .ok_or_else(|| format!("`{key}` must be a positive number")),
    }
}

fn parse_env(v: Option<&Value>) -> Result<EnvId, String> {
    let name = v.and_then(Value::as_str).ok_or("`env` must be a string")?;
    name.parse::<EnvId>().map_err(|e| e.to_string())
}

/// Reads `[p, t, n]` where each slot is an integer or `null`.
fn parse_action(v: Option<&Value>) -> Option<RawAction> {
    let arr = v?.as_array()?;
    if arr.len() != 3 {
        return None;
    }
    let mut slots = [None; 3];
    for (slot, x) in slots.iter_mut().zip(arr) {
        *slot = match x {
            Value::Null => None,
            Value::Number(n) => Some(n.as_i64()?),
            _ => return None,
        };
    }
    Some(RawAction(slots))
}

fn info_name(id: EnvId) -> &'static str {
    id.name()
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn handle(&mut self, line: &str) -> Reply {
        let req: Value = match serde_json::from_str(line) {
            Ok(v @ Value::Object(_)) => v,
            Ok(_) => return Reply::more(failure("bad_request", "requests are JSON objects")),
            Err(e) => return Reply::more(failure("bad_request", format!("invalid JSON: {e}"))),
        };
        let Some(cmd) = req.get("cmd").and_then(Value::as_str) else {
            return Reply::more(failure("bad_request", "missing `cmd`"));
        };
        match cmd {
            "hello" | "version" => Reply::more(self.hello(&req)),
            "reset" => Reply::more(self.reset(&req)),
            "step" => Reply::more(self.step(&req)),
            "grammar" => Reply::more(self.grammar(&req)),
            "close" => Reply {
                line: to_line(&Closed {
                    ok: true,
                    closed: true,
                }),
                close: true,
            },
            other => Reply::more(failure("bad_request", format!("unknown command `{other}`"))),
        }
    }

    fn hello(&self, req: &Value) -> String {
        match req.get("version") {
            None => {}
            Some(v) if v.as_u64() == Some(u64::from(PROTOCOL_VERSION)) => {}
            Some(v) => {
                return failure(
                    "protocol_version_mismatch",
                    format!("client speaks protocol {v}, server speaks {PROTOCOL_VERSION}"),
                )
            }
        }
        to_line(&Hello {
            ok: true,
            protocol: PROTOCOL_VERSION,
            engine: ENGINE_VERSION,
        })
    }

    fn wrappers(id: EnvId, req: &Value) -> Result<WrapperConfig, String> {
        let mut config = WrapperConfig::default();
        let kind = match req.get("explo").and_then(Value::as_str) {
            None | Some("none") => None,
            Some(s) => Some(
                s.parse::<BonusKind>()
                    .map_err(|_| format!("`explo` must be lang, vision or none, not `{s}`"))?,
            ),
        };
        if let Some(kind) = kind {
            let mut p = BonusParams::<Reward>::with_kind(id, kind);
            if let Some(c) = field_f64(req, "explo_C")? {
                p.c = c;
            }
            if let Some(t) = field_f64(req, "explo_T")? {
                p.t = t;
            }
            if let Some(m) = field_f64(req, "explo_M")? {
                p.m = m;
            }
            config.explo = Some(p);
        }
        if let Some(w) = req.get("explo_weight") {
            config.weight = w.as_f64().ok_or("`explo_weight` must be a number")?;
        }
        if let Some(u) = req.get("unsocial") {
            config.unsocial = u.as_bool().ok_or("`unsocial` must be a boolean")?;
        }
        Ok(config)
    }

    fn reset(&mut self, req: &Value) -> String {
        let id = match parse_env(req.get("env")) {
            Ok(id) => id,
            Err(m) => return failure("unknown_env", m),
        };
        let Some(seed) = req.get("seed").and_then(Value::as_u64) else {
            return failure("bad_request", "`seed` must be a non-negative integer");
        };
        let role = match req.get("role").and_then(Value::as_str) {
            None => Role::Exiter,
            Some(r) => match r.parse() {
                Ok(role) => role,
                Err(_) => {
                    return failure(
                        "bad_request",
                        format!("`role` must be exiter or helper, not `{r}`"),
                    )
                }
            },
        };
        let config = match Self::wrappers(id, req) {
            Ok(c) => c,
            Err(m) => return failure("bad_request", m),
        };
        let spec = EnvSpec::with_role(id, role);
        match ShapedEpisode::reset(spec, seed, config) {
            Ok((ep, obs)) => {
                let info = ResetInfo {
                    env: info_name(id),
                    active: info_name(ep.state.active),
                    role,
                    seed,
                    t_max: ep.state.t_max,
                };
                let line = to_line(&ResetReply {
                    ok: true,
                    obs: &obs,
                    info,
                });
                self.episode = Some(ep);
                line
            }
            Err(e) => env_failure(&e),
        }
    }

    fn step(&mut self, req: &Value) -> String {
        let Some(ep) = self.episode.as_mut() else {
            return failure("no_episode", "send `reset` before `step`");
        };
        let Some(action) = parse_action(req.get("action")) else {
            return failure(
                "malformed_action",
                "`action` must be [primitive, template, noun] of integers or null",
            );
        };
        match ep.step(action) {
            Ok(s) => {
                let r = &s.result;
                let StepInfo {
                    t,
                    t_max,
                    active,
                    outcome,
                } = r.info;
                let info = WireStepInfo {
                    t,
                    t_max,
                    active: info_name(active),
                    outcome,
                    extrinsic: s.extrinsic,
                    intrinsic: s.intrinsic,
                };
                to_line(&StepReply {
                    ok: true,
                    obs: &r.obs,
                    reward: r.reward,
                    done: r.done,
                    info,
                })
            }
            Err(e) => env_failure(&e),
        }
    }

    fn grammar(&self, req: &Value) -> String {
        let id = match req.get("env") {
            None => match &self.episode {
                Some(ep) => ep.state.spec.id,
                None => return failure("no_episode", "name an `env` or reset an episode first"),
            },
            v => match parse_env(v) {
                Ok(id) => id,
                Err(m) => return failure("unknown_env", m),
            },
        };
        to_line(&GrammarReply {
            ok: true,
            grammar: GrammarDoc::for_env(id),
        })
    }
}

/// Serves one session over a reader/writer pair until `close` or EOF.
pub fn serve<R: BufRead, W: Write>(input: R, mut output: W) -> io::Result<()> {
    let mut session = Session::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let reply = session.handle(&line);
        writeln!(output, "{}", reply.line)?;
        output.flush()?;
        if reply.close {
            break;
        }
    }
    Ok(())
}

pub fn serve_stdio() -> io::Result<()> {
    let stdin = io::stdin();
    serve(stdin.lock(), io::stdout().lock())
}

fn serve_connection(stream: TcpStream) -> io::Result<()> {
    // one small reply per request; don't let Nagle hold it back
    stream.set_nodelay(true)?;
    let reader = BufReader::new(stream.try_clone()?);
    serve(reader, stream)
}

/// Accepts connections forever, one thread and one session per connection.
pub fn serve_tcp(listener: TcpListener) -> io::Result<()> {
    for stream in listener.incoming() {
        let stream = stream?;
        let peer = stream
            .peer_addr()
            .map(|a| a.to_string())
            .unwrap_or_else(|_| "unknown peer".into());
        thread::spawn(move || {
            if let Err(e) = serve_connection(stream) {
                eprintln!("session with {peer} ended: {e}");
            }
        });
    }
    Ok(())
}
