//! Interactive play over any line-based reader and writer.

use std::io::{BufRead, Write};

use super::render::render_ascii;
use super::trace::{digest, EpisodeTrace, TraceHeader, TraceStep, ENGINE_VERSION};
use super::HarnessError;
use crate::env::EnvSpec;
use crate::grammar::RawAction;
use crate::shaping::{ShapedEpisode, WrapperConfig};

pub const PLAY_HELP: &str = "\
commands:
  f forward   l turn left   r turn right   t toggle
  p pickup    drop          done           n no-op
  say T N     speak template T with noun N (may follow a move, e.g. `f say 1 5`)
  q quit";

/// Parses one command line into a wire action; `None` for unknown input.
pub fn parse_command(line: &str) -> Option<RawAction> {
    let mut words = line.split_whitespace().peekable();
    let primitive = match words.peek().copied() {
        Some("l") => Some(1),
        Some("r") => Some(2),
        Some("f") => Some(3),
        Some("p") => Some(4),
        Some("drop") => Some(5),
        Some("t") => Some(6),
        Some("done") => Some(7),
        Some("n") | Some(".") => None,
        Some("say") => {
            let a = parse_say(words)?;
            return Some(RawAction([None, a.0, a.1]));
        }
        _ => return None,
    };
    words.next();
    let (template, noun) = match words.peek() {
        None => (None, None),
        Some(_) => parse_say(words)?,
    };
    Some(RawAction([primitive, template, noun]))
}

fn parse_say<'a>(mut words: impl Iterator<Item = &'a str>) -> Option<(Option<i64>, Option<i64>)> {
    if words.next()? != "say" {
        return None;
    }
    let t = words.next()?.parse().ok()?;
    let n = words.next()?.parse().ok()?;
    words.next().is_none().then_some((Some(t), Some(n)))
}

/// Runs a manual episode until it ends or the player quits; returns the trace.
pub fn play<R: BufRead, W: Write>(
    spec: EnvSpec,
    seed: u64,
    input: R,
    out: &mut W,
) -> Result<EpisodeTrace, HarnessError> {
    let wrappers = WrapperConfig::default();
    let (mut ep, obs) = ShapedEpisode::reset(spec, seed, wrappers)?;
    let header = TraceHeader {
        engine_version: ENGINE_VERSION.to_string(),
        env: spec.id,
        role: spec.role,
        seed,
        policy: None,
        wrappers,
    };
    let mut trace = EpisodeTrace::new(header, &obs);
    write!(
        out,
        "{}heard: {}\n> ",
        render_ascii(&ep.state),
        obs.utterance
    )?;
    out.flush()?;
    for line in input.lines() {
        let line = line?;
        let cmd = line.trim();
        if cmd == "q" || cmd == "quit" {
            writeln!(out, "bye")?;
            break;
        }
        let Some(action) = parse_command(cmd) else {
            write!(out, "{PLAY_HELP}\n> ")?;
            out.flush()?;
            continue;
        };
        let s = match ep.step(action) {
            Ok(s) => s,
            Err(e) => {
                write!(out, "error: {e}\n> ")?;
                out.flush()?;
                continue;
            }
        };
        if let [_, Some(t), Some(n)] = action.0 {
            let text = spec
                .grammar()
                .render(crate::grammar::Phrase::new(t as u8, n as u8))?;
            writeln!(out, "you say: {text}")?;
        }
        let r = &s.result;
        write!(
            out,
            "{}heard: {}\nreward: {} done: {}\n",
            render_ascii(&ep.state),
            r.obs.utterance,
            r.reward,
            r.done
        )?;
        trace.steps.push(TraceStep {
            t: r.info.t,
            action,
            digest: digest(&r.obs),
            utterance: r.obs.utterance.clone(),
            reward: r.reward,
            done: r.done,
        });
        if r.done {
            let outcome = ep.state.outcome().expect("finished");
            writeln!(out, "episode over: {}", outcome.name())?;
            trace.outcome = Some(outcome);
            break;
        }
        write!(out, "> ")?;
        out.flush()?;
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_grammar() {
        assert_eq!(parse_command("f"), Some(RawAction([Some(3), None, None])));
        assert_eq!(
            parse_command("say 1 5"),
            Some(RawAction([None, Some(1), Some(5)]))
        );
        assert_eq!(
            parse_command("l say 3 3"),
            Some(RawAction([Some(1), Some(3), Some(3)]))
        );
        assert_eq!(parse_command("n"), Some(RawAction::NOOP));
        assert_eq!(parse_command("jump"), None);
        assert_eq!(parse_command("say 1"), None);
        assert_eq!(parse_command("f say 1 5 6"), None);
    }
}
