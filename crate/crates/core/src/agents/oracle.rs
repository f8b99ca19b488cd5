//! Privileged scripted solutions, one per environment.
//!
//! Oracles read the world state to plan routes and find out hidden facts
//! that a learner would have to infer (the dance pattern, the coin count, the
//! NPC's preferred introduction). Where the environment communicates the
//! answer through speech, the oracle still takes it from what it heard.

use rand_chacha::ChaCha8Rng;

use super::steer::{at, beside, heading, steer, Facing, Steer};
use super::{phrase, Policy, PolicyId, PolicyInput};
use crate::env::dance::DEMO_STEPS;
use crate::env::{thief_visible_coin_count, EnvId, EnvSpec, Role, Task, WorldState};
use crate::grammar::{Action, Utterance, DANCE_GRAMMAR};
use crate::grid::{Color, DoorState, Entity, Orientation, Pos, Primitive};
use crate::npc::{
    clear_line, eye_contact, DemoPhase, ExiterPhase, NpcBrain, NpcState, HOW_ARE_YOU, I_AM_FINE,
    WHERE_IS_THE_EXIT,
};

pub struct Oracle {
    spec: EnvSpec,
}

impl Oracle {
    pub fn new(spec: EnvSpec) -> Self {
        Oracle { spec }
    }

    fn say(&self, text: &str) -> Action {
        Action::say(phrase(self.spec, text))
    }

    fn go_and_say(&self, p: Primitive, text: &str) -> Action {
        Action {
            primitive: Some(p),
            utterance: Some(phrase(self.spec, text)),
        }
    }
}

impl Policy for Oracle {
    fn id(&self) -> PolicyId {
        PolicyId::Oracle
    }

    fn act(&mut self, input: PolicyInput<'_>, _rng: &mut ChaCha8Rng) -> Action {
        let PolicyInput::Privileged(s) = input else {
            panic!("the oracle reads the world state");
        };
        match s.active {
            EnvId::TalkItOut | EnvId::TalkItOutNoLiar => self.talk_it_out(s),
            EnvId::Dance => self.dance(s),
            EnvId::CoinThief | EnvId::CoinThiefTagged => {
                let n = thief_visible_coin_count(s).expect("coin episode");
                self.say(&format!("Here is {n}"))
            }
            EnvId::DiverseExit => self.diverse_exit(s),
            EnvId::ShowMe => self.show_me(s),
            EnvId::Help => self.help(s),
            EnvId::SocialEnv => unreachable!("the active environment is always a member"),
        }
    }
}

fn act_or_wait(s: Steer, arrived: Action) -> Action {
    match s {
        Steer::Arrived => arrived,
        Steer::Act(p) => Action::go(p),
        Steer::Stuck => Action::NOOP,
    }
}

/// The colour in a `"Go to the <colour> door."` line.
pub fn parse_directions(text: &str) -> Option<Color> {
    text.strip_prefix("Go to the ")?
        .strip_suffix(" door.")
        .and_then(Color::from_name)
}

fn heard_from<'a>(s: &'a WorldState, speaker: &'a str) -> impl Iterator<Item = &'a str> + 'a {
    s.dialogue
        .history()
        .iter()
        .filter(move |u: &&Utterance| u.speaker == speaker)
        .map(|u| u.text.as_str())
}

fn face_door(front: Pos, door: Pos) -> Orientation {
    heading(front, door).expect("door fronts touch their door")
}

fn npc_faces_agent(s: &WorldState, npc: &NpcState) -> bool {
    npc.pose.faces(s.agent.pos) && clear_line(npc.pose.pos, s.agent.pos, |p| s.gaze_blocked(p))
}

impl Oracle {
    fn talk_it_out(&self, s: &WorldState) -> Action {
        let Task::TalkItOut { doors, .. } = &s.task else {
            unreachable!()
        };
        let guide = heard_from(s, "Wizard").find_map(|t| t.strip_prefix("Ask ")?.strip_suffix('.'));
        let Some(guide) = guide else {
            return self.converse(s, "Wizard");
        };
        match heard_from(s, guide).find_map(parse_directions) {
            Some(color) => {
                let door = doors
                    .iter()
                    .find(|d| d.color == color)
                    .expect("named door exists");
                act_or_wait(
                    steer(s, at(door.front, face_door(door.front, door.pos))),
                    self.say("Open sesame"),
                )
            }
            None => self.converse(s, guide),
        }
    }

    /// Walks up to `name`, introduces itself, then asks for the exit.
    fn converse(&self, s: &WorldState, name: &str) -> Action {
        let npc = s
            .npcs
            .iter()
            .find(|n| n.name == name)
            .expect("named NPC exists");
        if !npc.pose.pos.is_adjacent(s.agent.pos) {
            return act_or_wait(steer(s, beside(npc.pose.pos)), Action::NOOP);
        }
        if heard_from(s, name).any(|t| t == I_AM_FINE) {
            self.say(WHERE_IS_THE_EXIT)
        } else {
            self.say(HOW_ARE_YOU)
        }
    }

    fn dance(&self, s: &WorldState) -> Action {
        let Task::Dance { pattern, .. } = &s.task else {
            unreachable!()
        };
        // actions count once the demonstration is over
        if s.t < DEMO_STEPS {
            return Action::NOOP;
        }
        let step = pattern.steps[((s.t - DEMO_STEPS) as usize) % pattern.steps.len()];
        Action {
            primitive: Some(step.primitive),
            utterance: step
                .utterance
                .map(|ph| phrase(self.spec, &DANCE_GRAMMAR.render(ph).expect("dance phrase"))),
        }
    }

    fn diverse_exit(&self, s: &WorldState) -> Action {
        let Task::DiverseExit { doors, .. } = &s.task else {
            unreachable!()
        };
        let npc = &s.npcs[0];
        let NpcBrain::Peer {
            preference,
            ever_poked,
            saved,
            ..
        } = &npc.brain
        else {
            unreachable!()
        };
        if let Some(color) = heard_from(s, &npc.name).find_map(parse_directions) {
            let door = doors
                .iter()
                .find(|d| d.color == color)
                .expect("named door exists");
            return act_or_wait(
                steer(s, at(door.front, face_door(door.front, door.pos))),
                Action::go(Primitive::Toggle),
            );
        }
        let target = npc.pose.pos;
        let beside_npc = steer(s, beside(target));
        if saved.is_some() {
            // directions come on eye contact and are only heard next to the NPC
            return act_or_wait(beside_npc, Action::NOOP);
        }
        let text = preference.utterance.text();
        let contact_now = eye_contact(s.agent, npc.pose, |p| s.gaze_blocked(p));
        match (preference.next_to, preference.poked, preference.eye_contact) {
            (true, true, _) if !ever_poked => {
                act_or_wait(beside_npc, Action::go(Primitive::Toggle))
            }
            (true, _, true) => match beside_npc {
                Steer::Arrived if npc_faces_agent(s, npc) => self.say(text),
                other => act_or_wait(other, Action::NOOP),
            },
            // turning away while speaking breaks the gaze for this step
            (true, _, false) => act_or_wait(beside_npc, self.go_and_say(Primitive::TurnLeft, text)),
            (false, _, true) => {
                let aligned = |p: Pos| {
                    (p.manhattan(target) >= 2 && clear_line(p, target, |c| s.gaze_blocked(c)))
                        .then(|| Facing::Toward(heading_along(p, target)))
                };
                match steer(s, aligned) {
                    Steer::Arrived if npc_faces_agent(s, npc) => self.say(text),
                    other => act_or_wait(other, Action::NOOP),
                }
            }
            (false, _, false) => {
                if s.agent.pos.is_adjacent(target) {
                    let away = |p: Pos| (p.manhattan(target) >= 2).then_some(Facing::Any);
                    act_or_wait(steer(s, away), Action::NOOP)
                } else if contact_now {
                    self.go_and_say(Primitive::TurnLeft, text)
                } else {
                    self.say(text)
                }
            }
        }
    }

    fn show_me(&self, s: &WorldState) -> Action {
        let Task::ShowMe {
            door,
            switches,
            correct,
            agent_presses,
            npc_exited,
            ..
        } = &s.task
        else {
            unreachable!()
        };
        if !npc_exited {
            let npc = &s.npcs[0];
            let NpcBrain::Demonstrator { phase, .. } = npc.brain else {
                unreachable!()
            };
            let reserved = |p: Pos| p == door.front || switches.iter().any(|sw| sw.front == p);
            if phase != DemoPhase::Waiting {
                // eye contact may happen while crossing a front; clear it
                let clear = |p: Pos| (!reserved(p)).then_some(Facing::Any);
                return act_or_wait(steer(s, clear), Action::NOOP);
            }
            // catch the demonstrator's eye from a cell it never needs
            let target = npc.pose.pos;
            let aligned = |p: Pos| {
                (!reserved(p) && clear_line(p, target, |c| s.gaze_blocked(c)))
                    .then(|| Facing::Toward(heading_along(p, target)))
            };
            return act_or_wait(steer(s, aligned), Action::NOOP);
        }
        if matches!(
            s.grid.get(door.pos),
            Some(Entity::Door {
                state: DoorState::Open,
                ..
            })
        ) {
            return act_or_wait(
                steer(s, at(door.front, Orientation::North)),
                Action::go(Primitive::Forward),
            );
        }
        if *agent_presses == 0 {
            let sw = switches[*correct];
            return act_or_wait(
                steer(s, at(sw.front, Orientation::South)),
                Action::go(Primitive::Toggle),
            );
        }
        Action::NOOP
    }

    fn help(&self, s: &WorldState) -> Action {
        let Task::Help {
            role,
            doors,
            switches,
            ..
        } = &s.task
        else {
            unreachable!()
        };
        let npc = &s.npcs[0];
        match (role, &npc.brain) {
            (Role::Exiter, NpcBrain::Helper { target, .. }) => {
                let open = doors.iter().find(|d| {
                    matches!(
                        s.grid.get(d.pos),
                        Some(Entity::Door {
                            state: DoorState::Open,
                            ..
                        })
                    )
                });
                match open {
                    Some(d) => act_or_wait(
                        steer(s, at(d.front, Orientation::East)),
                        Action::go(Primitive::Forward),
                    ),
                    // stand by the helper's chosen door and look across at it
                    None => act_or_wait(
                        steer(s, at(doors[*target].front, Orientation::West)),
                        Action::NOOP,
                    ),
                }
            }
            (Role::Helper, NpcBrain::Exiter { phase, door }) => {
                let i = doors
                    .iter()
                    .position(|d| d.pos == *door)
                    .expect("exiter door");
                let post = switches[i].front;
                match phase {
                    ExiterPhase::Approach | ExiterPhase::Waiting => {
                        act_or_wait(steer(s, at(post, Orientation::East)), Action::NOOP)
                    }
                    _ => act_or_wait(
                        steer(s, at(post, Orientation::West)),
                        Action::go(Primitive::Toggle),
                    ),
                }
            }
            _ => unreachable!("Help roles pair an agent with the opposite NPC"),
        }
    }
}

/// Heading from `from` toward an aligned `to`.
fn heading_along(from: Pos, to: Pos) -> Orientation {
    Orientation::from_delta((to.x - from.x).signum(), (to.y - from.y).signum())
        .expect("aligned cells")
}
