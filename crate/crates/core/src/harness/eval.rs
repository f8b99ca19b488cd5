//! Running policies over seeded episodes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trace::{digest, EpisodeTrace, TraceHeader, TraceStep, ENGINE_VERSION};
use super::HarnessError;
use crate::agents::{make_policy, policy_rng, PolicyId, PolicyInput};
use crate::env::{EnvId, EnvSpec, Outcome, Role};
use crate::shaping::{ShapedEpisode, WrapperConfig};
use crate::Reward;

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeRun {
    pub seed: u64,
    pub outcome: Outcome,
    /// Sum of wrapped rewards.
    pub total_reward: Reward,
    /// Environment reward alone (nonzero only on success).
    pub extrinsic: Reward,
    pub length: u32,
    pub trace: EpisodeTrace,
}

/// Plays one full episode of `policy` on `spec`.
pub fn run_episode(
    spec: EnvSpec,
    policy: PolicyId,
    seed: u64,
    wrappers: WrapperConfig,
) -> Result<EpisodeRun, HarnessError> {
    let mut agent = make_policy(policy, spec)?;
    let mut rng = policy_rng(seed);
    let (mut ep, mut obs) = ShapedEpisode::reset(spec, seed, wrappers)?;
    let header = TraceHeader {
        engine_version: ENGINE_VERSION.to_string(),
        env: spec.id,
        role: spec.role,
        seed,
        policy: Some(policy.name().to_string()),
        wrappers,
    };
    let mut trace = EpisodeTrace::new(header, &obs);
    let (mut total, mut extrinsic) = (0.0, 0.0);
    loop {
        let input = if policy.privileged() {
            PolicyInput::Privileged(&ep.state)
        } else {
            PolicyInput::Observed(&obs)
        };
        let action = agent.act(input, &mut rng).to_raw();
        let s = ep.step(action)?;
        total += s.result.reward;
        extrinsic += s.extrinsic;
        trace.steps.push(TraceStep {
            t: s.result.info.t,
            action,
            digest: digest(&s.result.obs),
            utterance: s.result.obs.utterance.clone(),
            reward: s.result.reward,
            done: s.result.done,
        });
        obs = s.result.obs;
        if s.result.done {
            break;
        }
    }
    let outcome = ep.state.outcome().expect("loop ends on a finished episode");
    trace.outcome = Some(outcome);
    Ok(EpisodeRun {
        seed,
        outcome,
        total_reward: total,
        extrinsic,
        length: ep.state.t,
        trace,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub env: String,
    pub policy: PolicyId,
    /// Oracles see the full state; their scores prove solvability only.
    pub privileged: bool,
    pub n_episodes: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean_reward: f64,
    pub mean_extrinsic: f64,
    pub mean_episode_length: f64,
    pub seed_base: u64,
    pub wrappers: WrapperConfig,
}

/// Runs seeds `seed_base..seed_base + n` in parallel; the report does not
/// depend on scheduling.
pub fn evaluate_runs(
    spec: EnvSpec,
    policy: PolicyId,
    n_episodes: usize,
    seed_base: u64,
    wrappers: WrapperConfig,
) -> Result<(EvalReport, Vec<EpisodeRun>), HarnessError> {
    if n_episodes == 0 {
        return Err(HarnessError::Config(
            "at least one episode is required".into(),
        ));
    }
    make_policy(policy, spec)?;
    let runs: Vec<EpisodeRun> = (0..n_episodes as u64)
        .into_par_iter()
        .map(|i| run_episode(spec, policy, seed_base + i, wrappers))
        .collect::<Result<_, _>>()?;
    let n = n_episodes as f64;
    let successes = runs
        .iter()
        .filter(|r| r.outcome == Outcome::Success)
        .count();
    let report = EvalReport {
        env: spec.label(),
        policy,
        privileged: policy.privileged(),
        n_episodes,
        successes,
        success_rate: successes as f64 / n,
        mean_reward: runs.iter().map(|r| r.total_reward).sum::<f64>() / n,
        mean_extrinsic: runs.iter().map(|r| r.extrinsic).sum::<f64>() / n,
        mean_episode_length: runs.iter().map(|r| f64::from(r.length)).sum::<f64>() / n,
        seed_base,
        wrappers,
    };
    Ok((report, runs))
}

pub fn evaluate(
    spec: EnvSpec,
    policy: PolicyId,
    n_episodes: usize,
    seed_base: u64,
    wrappers: WrapperConfig,
) -> Result<EvalReport, HarnessError> {
    evaluate_runs(spec, policy, n_episodes, seed_base, wrappers).map(|(r, _)| r)
}

/// Success rates of the same policy in both Help roles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoleTransfer {
    pub exiter_rate: f64,
    pub helper_rate: f64,
}

pub fn role_transfer_eval(
    policy: PolicyId,
    n_episodes: usize,
    seed_base: u64,
) -> Result<RoleTransfer, HarnessError> {
    let rate = |role| {
        evaluate(
            EnvSpec::with_role(EnvId::Help, role),
            policy,
            n_episodes,
            seed_base,
            WrapperConfig::default(),
        )
        .map(|r| r.success_rate)
    };
    Ok(RoleTransfer {
        exiter_rate: rate(Role::Exiter)?,
        helper_rate: rate(Role::Helper)?,
    })
}
