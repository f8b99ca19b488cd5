//! Scripted policies: privileged oracles and observation-only baselines.

mod baselines;
mod ego;
mod oracle;
mod steer;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use baselines::{ExiterAsHelper, RandomDoor, UniformCoinAnswer, UniformRandom, EXITER_EPSILON};
pub use ego::EgoMap;
pub use oracle::Oracle;

use crate::env::{EnvId, EnvSpec, UnknownName, WorldState};
use crate::grammar::{Action, Phrase};
use crate::observation::Observation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyId {
    Oracle,
    RandomDoor,
    UniformRandom,
    UniformCoinAnswer,
    ExiterAsHelper,
}

impl PolicyId {
    pub const ALL: [PolicyId; 5] = [
        PolicyId::Oracle,
        PolicyId::RandomDoor,
        PolicyId::UniformRandom,
        PolicyId::UniformCoinAnswer,
        PolicyId::ExiterAsHelper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyId::Oracle => "oracle",
            PolicyId::RandomDoor => "random_door",
            PolicyId::UniformRandom => "uniform_random",
            PolicyId::UniformCoinAnswer => "uniform_coin_answer",
            PolicyId::ExiterAsHelper => "exiter_as_helper",
        }
    }

    /// Privileged policies read the full world state instead of observations.
    pub fn privileged(self) -> bool {
        matches!(self, PolicyId::Oracle)
    }

    /// Environments this policy is defined for.
    pub fn supports(self, spec: EnvSpec) -> bool {
        match self {
            PolicyId::Oracle | PolicyId::UniformRandom => true,
            PolicyId::RandomDoor => matches!(
                spec.id,
                EnvId::TalkItOut | EnvId::TalkItOutNoLiar | EnvId::DiverseExit
            ),
            PolicyId::UniformCoinAnswer => {
                matches!(spec.id, EnvId::CoinThief | EnvId::CoinThiefTagged)
            }
            PolicyId::ExiterAsHelper => spec.id == EnvId::Help,
        }
    }
}

impl fmt::Display for PolicyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyId {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolicyId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("policy {policy} is not defined for {env}")]
pub struct PolicyError {
    pub policy: PolicyId,
    pub env: String,
}

/// What a policy gets to look at. Baselines only ever receive `Observed`.
#[derive(Debug, Clone, Copy)]
pub enum PolicyInput<'a> {
    Privileged(&'a WorldState),
    Observed(&'a Observation),
}

pub trait Policy: Send {
    fn id(&self) -> PolicyId;

    /// Chooses the next action. Policies keep per-episode memory and are
    /// built fresh for every episode.
    fn act(&mut self, input: PolicyInput<'_>, rng: &mut ChaCha8Rng) -> Action;
}

/// Builds the policy for one episode of `spec`.
pub fn make_policy(id: PolicyId, spec: EnvSpec) -> Result<Box<dyn Policy>, PolicyError> {
    if !id.supports(spec) {
        return Err(PolicyError {
            policy: id,
            env: spec.label(),
        });
    }
    Ok(match id {
        PolicyId::Oracle => Box::new(Oracle::new(spec)),
        PolicyId::RandomDoor => Box::new(RandomDoor::new(spec)),
        PolicyId::UniformRandom => Box::new(UniformRandom::new(spec)),
        PolicyId::UniformCoinAnswer => Box::new(UniformCoinAnswer::new(spec)),
        PolicyId::ExiterAsHelper => Box::new(ExiterAsHelper::new(spec)),
    })
}

/// Policy randomness for an episode: same seed as the environment, separate stream.
pub fn policy_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

/// Index pair for `text` in the caller-facing grammar of `spec`.
pub(crate) fn phrase(spec: EnvSpec, text: &str) -> Phrase {
    spec.grammar()
        .parse(text)
        .unwrap_or_else(|| panic!("`{text}` is not in the {} grammar", spec.id))
}
