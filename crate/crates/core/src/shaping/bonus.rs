//! Episodic count-based exploration bonuses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::env::{EnvId, UnknownName};
use crate::grid::CellEncoding;
use crate::observation::Observation;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BonusKind {
    Lang,
    Vision,
}

impl BonusKind {
    pub fn name(self) -> &'static str {
        match self {
            BonusKind::Lang => "lang",
            BonusKind::Vision => "vision",
        }
    }
}

impl fmt::Display for BonusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BonusKind {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lang" => Ok(BonusKind::Lang),
            "vision" => Ok(BonusKind::Vision),
            _ => Err(UnknownName(s.to_string())),
        }
    }
}

/// `C`, `T` and `M` of the bonus `tanh(C / ((N + 1)^M · T))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BonusParams<F> {
    pub kind: BonusKind,
    pub c: F,
    pub t: F,
    pub m: F,
}

pub const DEFAULT_T: f64 = 0.6;
pub const DEFAULT_M: f64 = 50.0;

impl<F: Scalar> BonusParams<F> {
    pub fn new(kind: BonusKind, c: F, t: F, m: F) -> Self {
        BonusParams { kind, c, t, m }
    }

    /// Tuned bonus for each environment: language novelty where the task is
    /// mostly dialogue, visual novelty elsewhere.
    pub fn defaults_for(env: EnvId) -> Self {
        let (kind, c) = match env {
            EnvId::TalkItOut | EnvId::TalkItOutNoLiar => (BonusKind::Lang, 7.0),
            EnvId::DiverseExit => (BonusKind::Lang, 20.0),
            EnvId::Dance | EnvId::ShowMe | EnvId::Help => (BonusKind::Vision, 3.0),
            EnvId::CoinThief | EnvId::CoinThiefTagged | EnvId::SocialEnv => {
                (BonusKind::Vision, 2.0)
            }
        };
        Self::new(kind, F::lit(c), F::lit(DEFAULT_T), F::lit(DEFAULT_M))
    }

    /// Defaults for `env` with a different bonus kind; `C` keeps the value
    /// tuned for the environment.
    pub fn with_kind(env: EnvId, kind: BonusKind) -> Self {
        BonusParams {
            kind,
            ..Self::defaults_for(env)
        }
    }

    /// One key's contribution given how often it was seen before.
    pub fn term(&self, prior_count: u32) -> F {
        self.c / ((F::from_count(prior_count) + F::one()).powf(self.m) * self.t)
    }
}

/// Occurrence counts for the current episode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoveltyCounter<K: Ord> {
    counts: BTreeMap<K, u32>,
}

impl<K: Ord> Default for NoveltyCounter<K> {
    fn default() -> Self {
        NoveltyCounter {
            counts: BTreeMap::new(),
        }
    }
}

impl<K: Ord> NoveltyCounter<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self, key: &K) -> u32 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn increment(&mut self, key: K) {
        *self.counts.entry(key).or_insert(0) += 1;
    }

    pub fn reset(&mut self) {
        self.counts.clear();
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Bonus for one step that observed the set `keys`: the tanh of the
    /// summed terms at the counts before this step, after which each key
    /// counts once more.
    pub fn observe<F: Scalar>(&mut self, keys: BTreeSet<K>, p: &BonusParams<F>) -> F {
        let sum = keys
            .iter()
            .fold(F::zero(), |acc, k| acc + p.term(self.count(k)));
        for k in keys {
            self.increment(k);
        }
        sum.tanh()
    }
}

/// Language novelty over the `"Name: text"` strings heard this step.
/// Several NPCs speaking at once contribute one term each.
pub fn lang_bonus<'a, F: Scalar>(
    counter: &mut NoveltyCounter<String>,
    heard: impl IntoIterator<Item = &'a str>,
    p: &BonusParams<F>,
) -> F {
    let keys: BTreeSet<String> = heard.into_iter().map(str::to_string).collect();
    if keys.is_empty() {
        return F::zero();
    }
    counter.observe(keys, p)
}

/// Visual novelty over the distinct cell encodings in the observation grid.
pub fn vision_bonus<F: Scalar>(
    counter: &mut NoveltyCounter<CellEncoding>,
    obs: &Observation,
    p: &BonusParams<F>,
) -> F {
    let keys: BTreeSet<CellEncoding> = obs.cells().copied().collect();
    counter.observe(keys, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang7() -> BonusParams<f64> {
        BonusParams::defaults_for(EnvId::TalkItOut)
    }

    #[test]
    fn first_and_second_hearing() {
        let mut c = NoveltyCounter::new();
        let first = lang_bonus(&mut c, ["Wizard: I am fine."], &lang7());
        assert!((first - 1.0).abs() < 1e-6);
        let second = lang_bonus(&mut c, ["Wizard: I am fine."], &lang7());
        let expected = (7.0 / (2f64.powi(50) * 0.6)).tanh();
        assert!((second - expected).abs() < 1e-20 && second < 1.1e-14);
        assert_eq!(c.count(&"Wizard: I am fine.".to_string()), 2);
    }

    #[test]
    fn silence_leaves_counter_alone() {
        let mut c = NoveltyCounter::new();
        assert_eq!(lang_bonus::<f64>(&mut c, [], &lang7()), 0.0);
        assert_eq!(c.distinct(), 0);
    }

    #[test]
    fn simultaneous_speech_sums_inside_tanh() {
        let p = BonusParams::<f64>::new(BonusKind::Lang, 0.3, 0.6, 50.0);
        let mut c = NoveltyCounter::new();
        let r = lang_bonus(&mut c, ["A: x", "B: y"], &p);
        assert!((r - (2.0 * 0.3 / 0.6f64).tanh()).abs() < 1e-15);
    }

    #[test]
    fn vision_counts_each_encoding_once_per_step() {
        let blank = Observation {
            grid: [[CellEncoding::EMPTY; 7]; 7],
            utterance: "<empty>".into(),
            history: String::new(),
        };
        let mut obs = blank.clone();
        obs.grid[0][0] = CellEncoding::new(2, 5, 0, 0);
        let p = BonusParams::<f64>::defaults_for(EnvId::CoinThief);
        let mut c = NoveltyCounter::new();
        let r = vision_bonus(&mut c, &obs, &p);
        assert!((r - (2.0 * 2.0 / 0.6f64).tanh()).abs() < 1e-15);
        assert_eq!(c.count(&CellEncoding::EMPTY), 1);
        assert!(vision_bonus(&mut c, &obs, &p) < 1e-12);
    }

    #[test]
    fn single_precision_agrees() {
        let p = BonusParams::<f32>::defaults_for(EnvId::DiverseExit);
        let mut c = NoveltyCounter::new();
        assert!((lang_bonus(&mut c, ["Guide: hi"], &p) - 1.0).abs() < 1e-6);
        assert!(lang_bonus(&mut c, ["Guide: hi"], &p) < 1e-6);
    }
}
