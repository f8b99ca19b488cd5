//! Episode traces, observation digests and replay.

use serde::{Deserialize, Serialize};

use crate::env::{EnvId, EnvSpec, Outcome, Role};
use crate::grammar::RawAction;
use crate::observation::Observation;
use crate::shaping::{ShapedEpisode, WrapperConfig};
use crate::Reward;

/// Engine identity recorded in every trace; replays refuse other versions.
pub const ENGINE_VERSION: &str = concat!("socialai-core ", env!("CARGO_PKG_VERSION"));

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, b| {
        (h ^ u64::from(*b)).wrapping_mul(FNV_PRIME)
    })
}

/// Digest of [`Observation::canonical_bytes`], as 16 lowercase hex digits.
pub fn digest(obs: &Observation) -> String {
    format!("{:016x}", fnv1a64(&obs.canonical_bytes()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub engine_version: String,
    pub env: EnvId,
    pub role: Role,
    pub seed: u64,
    /// Policy that produced the actions, if any.
    pub policy: Option<String>,
    pub wrappers: WrapperConfig,
}

impl TraceHeader {
    pub fn spec(&self) -> EnvSpec {
        EnvSpec::with_role(self.env, self.role)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub t: u32,
    pub action: RawAction,
    pub digest: String,
    pub utterance: String,
    pub reward: Reward,
    pub done: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeTrace {
    pub header: TraceHeader,
    pub reset_digest: String,
    pub steps: Vec<TraceStep>,
    /// `None` when the episode was abandoned before it ended.
    pub outcome: Option<Outcome>,
}

impl EpisodeTrace {
    pub fn new(header: TraceHeader, reset_obs: &Observation) -> Self {
        EpisodeTrace {
            header,
            reset_digest: digest(reset_obs),
            steps: Vec::new(),
            outcome: None,
        }
    }

    pub fn actions(&self) -> Vec<RawAction> {
        self.steps.iter().map(|s| s.action).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("traces serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Identical {
        steps: usize,
    },
    Diverged {
        step: usize,
        field: String,
        expected: String,
        found: String,
    },
    Refused {
        reason: String,
    },
}

impl Verdict {
    pub fn is_identical(&self) -> bool {
        matches!(self, Verdict::Identical { .. })
    }
}

/// Re-executes the trace's actions from its seed and compares every record.
/// Step 0 is the reset observation.
pub fn replay(trace: &EpisodeTrace) -> Verdict {
    if trace.header.engine_version != ENGINE_VERSION {
        return Verdict::Refused {
            reason: format!(
                "trace was recorded by `{}` but this is `{}`",
                trace.header.engine_version, ENGINE_VERSION
            ),
        };
    }
    let diverged = |step: usize, field: &str, expected: String, found: String| Verdict::Diverged {
        step,
        field: field.to_string(),
        expected,
        found,
    };
    let (mut ep, obs) = match ShapedEpisode::reset(
        trace.header.spec(),
        trace.header.seed,
        trace.header.wrappers,
    ) {
        Ok(x) => x,
        Err(e) => return diverged(0, "reset", "a fresh episode".into(), e.to_string()),
    };
    let d = digest(&obs);
    if d != trace.reset_digest {
        return diverged(0, "digest", trace.reset_digest.clone(), d);
    }
    for (i, rec) in trace.steps.iter().enumerate() {
        let k = i + 1;
        let s = match ep.step(rec.action) {
            Ok(s) => s,
            Err(e) => return diverged(k, "step", "a valid step".into(), e.to_string()),
        };
        let r = &s.result;
        let d = digest(&r.obs);
        if r.info.t != rec.t {
            return diverged(k, "t", rec.t.to_string(), r.info.t.to_string());
        }
        if d != rec.digest {
            return diverged(k, "digest", rec.digest.clone(), d);
        }
        if r.obs.utterance != rec.utterance {
            return diverged(
                k,
                "utterance",
                rec.utterance.clone(),
                r.obs.utterance.clone(),
            );
        }
        if r.reward.to_bits() != rec.reward.to_bits() {
            return diverged(k, "reward", rec.reward.to_string(), r.reward.to_string());
        }
        if r.done != rec.done {
            return diverged(k, "done", rec.done.to_string(), r.done.to_string());
        }
    }
    if ep.state.outcome() != trace.outcome {
        return diverged(
            trace.steps.len(),
            "outcome",
            format!("{:?}", trace.outcome),
            format!("{:?}", ep.state.outcome()),
        );
    }
    Verdict::Identical {
        steps: trace.steps.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }
}
