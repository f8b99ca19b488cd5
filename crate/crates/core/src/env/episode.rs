//! Reset and the step pipeline.
//!
//! A step validates the action, advances the clock, applies the agent's
//! primitive and utterance, lets every NPC react, then checks termination.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dance::{match_dance, RecordedStep, DEMO_STEPS};
use super::layout;
use super::spec::{EnvId, EnvSpec, Role};
use super::state::{Outcome, Status, Task, WorldState};
use super::EnvError;
use crate::grammar::{Dialogue, Grammar, RawAction, Utterance, COIN_GRAMMAR};
use crate::grid::{extrinsic_reward, DoorState, Entity, Orientation, Pos, Primitive, RewardParams};
use crate::npc::{
    compute_social_events, mark_exited, npc_step, AgentBehaviour, NpcAction, NpcContext,
};
use crate::observation::Observation;
use crate::Reward;

pub const OPEN_SESAME: &str = "Open sesame";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepInfo {
    pub t: u32,
    pub t_max: u32,
    /// Member environment in force (differs from the request for SocialEnv).
    pub active: EnvId,
    pub outcome: Option<Outcome>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub obs: Observation,
    pub reward: Reward,
    pub done: bool,
    pub info: StepInfo,
}

/// Samples a fresh episode. The same `(spec, seed)` always yields the same state.
pub fn reset(spec: EnvSpec, seed: u64) -> Result<(WorldState, Observation), EnvError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (active, role) = match spec.id {
        EnvId::SocialEnv => (
            EnvId::SOCIAL_MEMBERS[rng.gen_range(0..EnvId::SOCIAL_MEMBERS.len())],
            Role::Exiter,
        ),
        id => (id, spec.role),
    };
    let l = layout::sample(active, role, &mut rng)?;
    let mut state = WorldState {
        spec,
        active,
        seed,
        grid: l.grid,
        agent: l.agent,
        npcs: l.npcs,
        task: l.task,
        t: 0,
        t_max: active.t_max().expect("member environments have a budget"),
        status: Status::Running,
        dialogue: Dialogue::new(),
        rng,
    };
    let idle = AgentBehaviour {
        pose: state.agent,
        primitive: None,
        utterance: None,
    };
    run_npcs(&mut state, idle);
    let obs = state.observe();
    Ok((state, obs))
}

/// Advances the episode by one step. Invalid actions leave the state untouched.
pub fn step(state: &mut WorldState, raw: RawAction) -> Result<StepResult, EnvError> {
    if state.is_done() {
        return Err(EnvError::EpisodeDone);
    }
    let grammar = state.spec.grammar();
    let action = grammar.validate(raw, state.spec.id, state.spec.allowed_primitives())?;
    // SocialEnv speaks the union grammar; anything the member grammar cannot
    // produce is silence for the member's rules
    let text = action
        .utterance
        .map(|ph| grammar.render(ph))
        .transpose()?
        .filter(|s| {
            state.spec.id == state.active || Grammar::for_env(state.active).parse(s).is_some()
        });

    state.t += 1;
    state.dialogue.begin_step();
    if let Some(p) = action.primitive {
        apply_agent_primitive(state, p);
    }
    if !state.is_done() {
        apply_agent_utterance(state, action.primitive, text.as_deref());
    }
    if !state.is_done() {
        let behaviour = AgentBehaviour {
            pose: state.agent,
            primitive: action.primitive,
            utterance: text.as_deref(),
        };
        run_npcs(state, behaviour);
    }
    if !state.is_done() && state.t >= state.t_max {
        state.status = Status::Finished(Outcome::Timeout);
    }

    let reward = match state.outcome() {
        Some(Outcome::Success) => extrinsic_reward::<Reward>(RewardParams {
            t: state.t,
            t_max: state.t_max,
        })
        .expect("steps never exceed the budget"),
        _ => 0.0,
    };
    Ok(StepResult {
        obs: state.observe(),
        reward,
        done: state.is_done(),
        info: StepInfo {
            t: state.t,
            t_max: state.t_max,
            active: state.active,
            outcome: state.outcome(),
        },
    })
}

/// Number of coins inside the union of the thief's two 5×5 views.
pub fn thief_visible_coin_count(state: &WorldState) -> Result<usize, EnvError> {
    match &state.task {
        Task::CoinThief { visible_coins, .. } => Ok(*visible_coins),
        _ => Err(EnvError::WrongEnv {
            op: "thief_visible_coin_count",
            expected: "CoinThief",
            found: state.active,
        }),
    }
}

fn finish(state: &mut WorldState, outcome: Outcome) {
    state.status = Status::Finished(outcome);
}

fn apply_agent_primitive(state: &mut WorldState, p: Primitive) {
    match p {
        Primitive::TurnLeft => state.agent.dir = state.agent.dir.left(),
        Primitive::TurnRight => state.agent.dir = state.agent.dir.right(),
        Primitive::Forward => agent_forward(state),
        Primitive::Pickup | Primitive::Drop => {}
        Primitive::Toggle => agent_toggle(state),
        Primitive::Done => finish(state, Outcome::Failure),
    }
}

fn agent_forward(state: &mut WorldState) {
    if matches!(state.active, EnvId::CoinThief | EnvId::CoinThiefTagged) {
        finish(state, Outcome::Failure);
        return;
    }
    let front = state.agent.front();
    if !state.is_free(front) {
        return;
    }
    state.agent.pos = front;
    // walking onto an open door leaves the room
    if let Some(Entity::Door {
        state: DoorState::Open,
        ..
    }) = state.grid.get(front)
    {
        let outcome = match &state.task {
            Task::ShowMe {
                npc_exited: true, ..
            } => Outcome::Success,
            Task::Help {
                role: Role::Exiter, ..
            } => Outcome::Success,
            _ => Outcome::Failure,
        };
        finish(state, outcome);
    }
}

fn agent_toggle(state: &mut WorldState) {
    let front = state.agent.front();
    match state.active {
        EnvId::TalkItOut
        | EnvId::TalkItOutNoLiar
        | EnvId::Dance
        | EnvId::CoinThief
        | EnvId::CoinThiefTagged => finish(state, Outcome::Failure),
        EnvId::DiverseExit => {
            if let Task::DiverseExit { doors, correct, .. } = &state.task {
                if let Some(i) = doors.iter().position(|d| d.pos == front) {
                    let outcome = if i == *correct {
                        Outcome::Success
                    } else {
                        Outcome::Failure
                    };
                    finish(state, outcome);
                }
            }
        }
        EnvId::ShowMe => {
            let Task::ShowMe {
                switches,
                agent_presses,
                ..
            } = &mut state.task
            else {
                return;
            };
            let Some(i) = switches.iter().position(|s| s.pos == front) else {
                return;
            };
            if *agent_presses > 0 {
                return;
            }
            *agent_presses += 1;
            activate_show_me_switch(state, i);
        }
        EnvId::Help => {
            if let Some(i) = help_switch_at(state, front) {
                press_help_switch(state, i);
            }
        }
        EnvId::SocialEnv => unreachable!("the active environment is always a member"),
    }
}

fn apply_agent_utterance(state: &mut WorldState, primitive: Option<Primitive>, text: Option<&str>) {
    let front = state.agent.front();
    match &mut state.task {
        Task::TalkItOut { doors, correct } => {
            if text == Some(OPEN_SESAME) {
                if let Some(i) = doors.iter().position(|d| d.pos == front) {
                    let outcome = if i == *correct {
                        Outcome::Success
                    } else {
                        Outcome::Failure
                    };
                    finish(state, outcome);
                }
            }
        }
        Task::CoinThief { visible_coins, .. } => {
            let answer = text.and_then(|s| COIN_GRAMMAR.parse(s));
            if let Some(ph) = answer {
                // nouns are "1".."6"
                let n = ph.noun as usize + 1;
                let outcome = if n == *visible_coins {
                    Outcome::Success
                } else {
                    Outcome::Failure
                };
                finish(state, outcome);
            }
        }
        Task::Dance { pattern, recorded } if state.t > DEMO_STEPS => {
            recorded.push(RecordedStep {
                primitive,
                utterance: text.map(str::to_string),
            });
            if match_dance(recorded, pattern) {
                finish(state, Outcome::Success);
            }
        }
        _ => {}
    }
}

fn help_switch_at(state: &WorldState, p: Pos) -> Option<usize> {
    match &state.task {
        Task::Help { switches, .. } => switches.iter().position(|s| s.pos == p),
        _ => None,
    }
}

fn set_door(state: &mut WorldState, p: Pos, door_state: DoorState) {
    if let Some(Entity::Door { color, .. }) = state.grid.get(p) {
        state.grid.set(
            p,
            Some(Entity::Door {
                color,
                state: door_state,
            }),
        );
    }
}

/// Switch activation is permanent until the demonstrator leaves; only the
/// correct switch unlocks the door.
fn activate_show_me_switch(state: &mut WorldState, i: usize) {
    let Task::ShowMe {
        door,
        correct,
        activated,
        ..
    } = &mut state.task
    else {
        return;
    };
    if activated.is_some() {
        return;
    }
    *activated = Some(i);
    if i == *correct {
        let door = door.pos;
        set_door(state, door, DoorState::Open);
    }
}

fn press_help_switch(state: &mut WorldState, i: usize) {
    let Task::Help { doors, pressed, .. } = &mut state.task else {
        return;
    };
    pressed[i] = true;
    let both = pressed.iter().all(|p| *p);
    let door = doors[i].pos;
    set_door(state, door, DoorState::Open);
    if both {
        finish(state, Outcome::Failure);
    }
}

/// Lets every present NPC perceive the agent's behaviour and act once.
fn run_npcs(state: &mut WorldState, agent: AgentBehaviour<'_>) {
    let npc_adjacent_hearing = state.active.npc_hears_adjacent_only();
    let agent_adjacent_hearing = state.active.agent_hears_adjacent_only();
    for i in 0..state.npcs.len() {
        if state.is_done() {
            return;
        }
        if !state.npcs[i].present {
            continue;
        }
        let mut npc = state.npcs[i].clone();
        let mut rng = state.rng.clone();
        let turn = {
            let view: &WorldState = state;
            let events = compute_social_events(npc.pose, agent, npc_adjacent_hearing, |p| {
                view.gaze_blocked(p)
            });
            let blocked = |p: Pos| !view.is_free(p);
            let gaze_blocked = |p: Pos| view.gaze_blocked(p);
            let ctx = NpcContext {
                t: view.t,
                agent: view.agent,
                blocked: &blocked,
                gaze_blocked: &gaze_blocked,
            };
            npc_step(&mut npc, &events, &ctx, &mut rng)
        };
        state.rng = rng;
        state.npcs[i] = npc;
        apply_npc_action(state, i, turn.action);
        if let Some(text) = turn.utterance {
            let npc = &state.npcs[i];
            if !agent_adjacent_hearing || npc.pose.pos.is_adjacent(state.agent.pos) {
                state.dialogue.hear(Utterance::new(npc.name.clone(), text));
            }
        }
    }
}

fn heading(from: Pos, to: Pos) -> Option<Orientation> {
    Orientation::from_delta(to.x - from.x, to.y - from.y)
}

fn apply_npc_action(state: &mut WorldState, i: usize, action: NpcAction) {
    let from = state.npcs[i].pose.pos;
    match action {
        NpcAction::None => {}
        NpcAction::Face(d) => state.npcs[i].pose.dir = d,
        NpcAction::StepTo(p) => {
            if let Some(d) = heading(from, p) {
                state.npcs[i].pose.dir = d;
                if state.is_free(p) {
                    state.npcs[i].pose.pos = p;
                }
            }
        }
        NpcAction::Toggle(p) => {
            let Some(d) = heading(from, p) else { return };
            state.npcs[i].pose.dir = d;
            match state.active {
                EnvId::ShowMe => npc_toggle_show_me(state, p),
                EnvId::Help => {
                    if let Some(s) = help_switch_at(state, p) {
                        press_help_switch(state, s);
                    }
                }
                _ => {}
            }
        }
        NpcAction::Exit(p) => {
            let Some(d) = heading(from, p) else { return };
            state.npcs[i].pose.dir = d;
            if !matches!(
                state.grid.get(p),
                Some(Entity::Door {
                    state: DoorState::Open,
                    ..
                })
            ) {
                return;
            }
            mark_exited(&mut state.npcs[i]);
            state.npcs[i].pose.pos = p;
            npc_left_room(state);
        }
    }
}

/// The demonstrator's press always unlocks the door, whatever the agent did.
fn npc_toggle_show_me(state: &mut WorldState, p: Pos) {
    let Task::ShowMe {
        door,
        switches,
        activated,
        ..
    } = &mut state.task
    else {
        return;
    };
    let Some(i) = switches.iter().position(|s| s.pos == p) else {
        return;
    };
    *activated = Some(i);
    let door = door.pos;
    set_door(state, door, DoorState::Open);
}

fn npc_left_room(state: &mut WorldState) {
    match &mut state.task {
        Task::ShowMe {
            door,
            activated,
            npc_exited,
            ..
        } => {
            *npc_exited = true;
            *activated = None;
            let door = door.pos;
            set_door(state, door, DoorState::Locked);
        }
        Task::Help {
            role: Role::Helper, ..
        } => finish(state, Outcome::Success),
        _ => {}
    }
}
