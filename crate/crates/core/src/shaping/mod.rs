//! Exploration bonuses, the unsocial observation filter and the wrapper
//! combining them with an environment.

mod bonus;

pub use bonus::{
    lang_bonus, vision_bonus, BonusKind, BonusParams, NoveltyCounter, DEFAULT_M, DEFAULT_T,
};

use serde::{Deserialize, Serialize};

use crate::env::{self, EnvError, EnvSpec, StepResult, WorldState};
use crate::grammar::{RawAction, EMPTY_INDICATOR};
use crate::grid::cell::TYPE_NPC;
use crate::grid::CellEncoding;
use crate::observation::Observation;
use crate::Reward;

/// Removes everything that comes from NPCs: their cells read as empty floor
/// and the language channel falls silent.
pub fn unsocial_filter(obs: &Observation) -> Observation {
    let mut grid = obs.grid;
    for cell in grid.iter_mut().flatten() {
        if cell.type_code == TYPE_NPC {
            *cell = CellEncoding::EMPTY;
        }
    }
    Observation {
        grid,
        utterance: EMPTY_INDICATOR.to_string(),
        history: String::new(),
    }
}

/// Reward and observation wrappers applied on top of an environment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WrapperConfig {
    pub explo: Option<BonusParams<Reward>>,
    /// Weight of the intrinsic term in the returned reward.
    pub weight: Reward,
    pub unsocial: bool,
}

impl Default for WrapperConfig {
    fn default() -> Self {
        WrapperConfig {
            explo: None,
            weight: 1.0,
            unsocial: false,
        }
    }
}

impl WrapperConfig {
    pub fn is_identity(&self) -> bool {
        self.explo.is_none() && !self.unsocial
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapedStep {
    /// The step as seen through the wrappers; `reward` already includes the
    /// weighted bonus.
    pub result: StepResult,
    pub extrinsic: Reward,
    pub intrinsic: Reward,
}

/// An episode with per-episode novelty counters.
#[derive(Debug, Clone)]
pub struct ShapedEpisode {
    pub state: WorldState,
    pub config: WrapperConfig,
    lang: NoveltyCounter<String>,
    vision: NoveltyCounter<CellEncoding>,
}

impl ShapedEpisode {
    /// Starts an episode with fresh counters. The reset observation is not
    /// counted; bonuses accrue from the first step on.
    pub fn reset(
        spec: EnvSpec,
        seed: u64,
        config: WrapperConfig,
    ) -> Result<(Self, Observation), EnvError> {
        let (state, obs) = env::reset(spec, seed)?;
        let ep = ShapedEpisode {
            state,
            config,
            lang: NoveltyCounter::new(),
            vision: NoveltyCounter::new(),
        };
        let obs = ep.filter(obs);
        Ok((ep, obs))
    }

    fn filter(&self, obs: Observation) -> Observation {
        if self.config.unsocial {
            unsocial_filter(&obs)
        } else {
            obs
        }
    }

    pub fn step(&mut self, action: RawAction) -> Result<ShapedStep, EnvError> {
        let mut result = env::step(&mut self.state, action)?;
        result.obs = self.filter(result.obs);
        let intrinsic = match &self.config.explo {
            None => 0.0,
            Some(p) => match p.kind {
                BonusKind::Lang => {
                    // the unsocial filter silences the channel before counting
                    let heard: Vec<String> = if self.config.unsocial {
                        Vec::new()
                    } else {
                        self.state
                            .dialogue
                            .current()
                            .iter()
                            .map(|u| u.heard())
                            .collect()
                    };
                    lang_bonus(&mut self.lang, heard.iter().map(String::as_str), p)
                }
                BonusKind::Vision => vision_bonus(&mut self.vision, &result.obs, p),
            },
        };
        let extrinsic = result.reward;
        result.reward = extrinsic + self.config.weight * intrinsic;
        Ok(ShapedStep {
            result,
            extrinsic,
            intrinsic,
        })
    }
}
