//! Scripted NPC state machines.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::perception::{gaze_toward, SocialEvents};
use crate::env::dance::DancePattern;
use crate::env::diverse_exit::{IntroUtterance, IntroductoryConfiguration};
use crate::grammar::DANCE_GRAMMAR;
use crate::grid::{nav, CellEncoding, Color, Orientation, Pos, Pose, Primitive};

pub const HOW_ARE_YOU: &str = "How are you";
pub const WHERE_IS_THE_EXIT: &str = "Where is the exit";
pub const I_AM_FINE: &str = "I am fine.";
pub const LOOK_AT_ME_DANCE: &str = "Look at me!";
pub const REPEAT_MY_MOVES: &str = "Now repeat my moves";
pub const FREEZE: &str = "Freeze! Give me all your coins!";
pub const LOOK_AT_ME: &str = "Look at me";

pub fn go_to_door(color: Color) -> String {
    format!("Go to the {} door.", color.name())
}

/// Visible NPC class; drives the status channel of the cell encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NpcKind {
    Wizard,
    Guide,
    Dancer,
    Thief,
    Peer,
    Demonstrator,
    Helper,
    Exiter,
}

impl NpcKind {
    pub fn subtype_code(self) -> u8 {
        match self {
            NpcKind::Guide => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DemoPhase {
    Waiting,
    ToSwitch,
    ToDoor,
    Gone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HelperPhase {
    Approach,
    Waiting,
    Done,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExiterPhase {
    Approach,
    Waiting,
    Exiting,
    Gone,
}

/// Script phase and memory of one NPC.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NpcBrain {
    Wizard {
        true_guide: String,
        introduced: bool,
    },
    Guide {
        truthful: bool,
        introduced: bool,
        correct: Color,
        wrong: Vec<Color>,
    },
    Dancer {
        pattern: DancePattern,
    },
    Thief {
        facing: Orientation,
        look_around: Side,
    },
    Peer {
        preference: IntroductoryConfiguration,
        ever_poked: bool,
        saved: Option<IntroductoryConfiguration>,
        correct: Color,
    },
    Demonstrator {
        phase: DemoPhase,
        switch: Pos,
        switch_front: Pos,
        door: Pos,
        door_front: Pos,
    },
    Helper {
        phase: HelperPhase,
        target: usize,
        switches: [Pos; 2],
        doors: [Pos; 2],
    },
    Exiter {
        phase: ExiterPhase,
        door: Pos,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpcState {
    pub name: String,
    pub kind: NpcKind,
    pub pose: Pose,
    pub color: Color,
    /// False once the NPC has left through a door.
    pub present: bool,
    pub brain: NpcBrain,
}

impl NpcState {
    pub fn new(
        name: impl Into<String>,
        kind: NpcKind,
        pose: Pose,
        color: Color,
        brain: NpcBrain,
    ) -> Self {
        NpcState {
            name: name.into(),
            kind,
            pose,
            color,
            present: true,
            brain,
        }
    }

    pub fn encode(&self) -> CellEncoding {
        CellEncoding::new(
            crate::grid::cell::TYPE_NPC,
            self.color.code(),
            self.kind.subtype_code(),
            self.pose.dir.code(),
        )
    }

    /// How the thief looks around: its start pose rotated to the look side.
    pub fn look_around_pose(&self) -> Option<Pose> {
        match self.brain {
            NpcBrain::Thief {
                facing,
                look_around,
            } => Some(Pose {
                pos: self.pose.pos,
                dir: match look_around {
                    Side::Left => facing.left(),
                    Side::Right => facing.right(),
                },
            }),
            _ => None,
        }
    }
}

/// Primitive-equivalent NPC action, applied by the environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NpcAction {
    None,
    Face(Orientation),
    /// Move to an adjacent cell, heading along the move. Ignored if occupied.
    StepTo(Pos),
    /// Face and toggle the adjacent cell.
    Toggle(Pos),
    /// Face the adjacent door and walk through it if it is open.
    Exit(Pos),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpcTurn {
    pub action: NpcAction,
    pub utterance: Option<String>,
}

impl NpcTurn {
    fn idle() -> Self {
        NpcTurn {
            action: NpcAction::None,
            utterance: None,
        }
    }

    fn act(action: NpcAction) -> Self {
        NpcTurn {
            action,
            utterance: None,
        }
    }

    fn say(text: impl Into<String>) -> Self {
        NpcTurn {
            action: NpcAction::None,
            utterance: Some(text.into()),
        }
    }
}

/// Read-only world facts an NPC may consult while deciding.
pub struct NpcContext<'a> {
    /// Steps elapsed; 0 while the episode is being reset.
    pub t: u32,
    pub agent: Pose,
    /// True for cells an NPC cannot enter (walls, closed doors, bodies).
    pub blocked: &'a dyn Fn(Pos) -> bool,
    /// True for cells that interrupt an NPC's gaze.
    pub gaze_blocked: &'a dyn Fn(Pos) -> bool,
}

/// Greedy Manhattan step toward `target`, x axis first, falling back to y.
pub fn greedy_step(from: Pos, target: Pos, blocked: &dyn Fn(Pos) -> bool) -> Option<Pos> {
    let dx = (target.x - from.x).signum();
    let dy = (target.y - from.y).signum();
    let mut candidates = Vec::with_capacity(2);
    if dx != 0 {
        candidates.push(Pos::new(from.x + dx, from.y));
    }
    if dy != 0 {
        candidates.push(Pos::new(from.x, from.y + dy));
    }
    candidates.into_iter().find(|p| !blocked(*p))
}

/// Next cell on a shortest path around obstacles, greedy when no path exists.
fn walk_toward(from: Pos, target: Pos, ctx: &NpcContext<'_>) -> NpcAction {
    let routed = nav::shortest_path(from, |p| p == target, |p| !(ctx.blocked)(p))
        .and_then(|path| path.first().copied());
    match routed.or_else(|| greedy_step(from, target, ctx.blocked)) {
        Some(p) => NpcAction::StepTo(p),
        None => NpcAction::None,
    }
}

fn look_at_agent(pose: Pose, ctx: &NpcContext<'_>) -> NpcAction {
    match gaze_toward(pose.pos, ctx.agent.pos, ctx.gaze_blocked) {
        Some(d) if d != pose.dir => NpcAction::Face(d),
        _ => NpcAction::None,
    }
}

fn face(pose: Pose, dir: Orientation) -> NpcAction {
    if pose.dir == dir {
        NpcAction::None
    } else {
        NpcAction::Face(dir)
    }
}

/// Advances one NPC by a step. The caller applies the returned action.
pub fn npc_step<R: Rng + ?Sized>(
    npc: &mut NpcState,
    events: &SocialEvents,
    ctx: &NpcContext<'_>,
    rng: &mut R,
) -> NpcTurn {
    if !npc.present {
        return NpcTurn::idle();
    }
    let heard = events.heard_utterance.as_deref();
    let pose = npc.pose;
    match &mut npc.brain {
        NpcBrain::Wizard {
            true_guide,
            introduced,
        } => match heard {
            Some(HOW_ARE_YOU) => {
                *introduced = true;
                NpcTurn::say(I_AM_FINE)
            }
            Some(WHERE_IS_THE_EXIT) if *introduced => NpcTurn::say(format!("Ask {true_guide}.")),
            _ => NpcTurn::idle(),
        },
        NpcBrain::Guide {
            truthful,
            introduced,
            correct,
            wrong,
        } => match heard {
            Some(HOW_ARE_YOU) => {
                *introduced = true;
                NpcTurn::say(I_AM_FINE)
            }
            Some(WHERE_IS_THE_EXIT) if *introduced => {
                let color = if *truthful {
                    *correct
                } else {
                    *wrong
                        .choose(rng)
                        .expect("lying guide has wrong doors to name")
                };
                NpcTurn::say(go_to_door(color))
            }
            _ => NpcTurn::idle(),
        },
        NpcBrain::Dancer { pattern } => match ctx.t {
            0 => NpcTurn::say(LOOK_AT_ME_DANCE),
            1..=3 => {
                let step = pattern.steps[(ctx.t - 1) as usize];
                let action = match step.primitive {
                    Primitive::TurnLeft => NpcAction::Face(pose.dir.left()),
                    Primitive::TurnRight => NpcAction::Face(pose.dir.right()),
                    _ => NpcAction::StepTo(pose.front()),
                };
                let utterance = step.utterance.map(|ph| {
                    DANCE_GRAMMAR
                        .render(ph)
                        .expect("dance pattern phrase is in grammar")
                });
                NpcTurn { action, utterance }
            }
            4 => NpcTurn::say(REPEAT_MY_MOVES),
            _ => NpcTurn::idle(),
        },
        NpcBrain::Thief {
            facing,
            look_around,
        } => match ctx.t {
            0 => NpcTurn::say(FREEZE),
            1 => NpcTurn::act(NpcAction::Face(match look_around {
                Side::Left => facing.left(),
                Side::Right => facing.right(),
            })),
            2 => NpcTurn::act(NpcAction::Face(*facing)),
            _ => NpcTurn::idle(),
        },
        NpcBrain::Peer {
            preference,
            ever_poked,
            saved,
            correct,
        } => {
            if events.poked_this_step {
                *ever_poked = true;
            }
            if saved.is_none() {
                if let Some(utterance) = heard.and_then(IntroUtterance::from_text) {
                    *saved = Some(IntroductoryConfiguration {
                        next_to: events.agent_adjacent,
                        poked: *ever_poked,
                        eye_contact: events.eye_contact,
                        utterance,
                    });
                }
            }
            let utterance =
                (*saved == Some(*preference) && events.eye_contact).then(|| go_to_door(*correct));
            NpcTurn {
                action: look_at_agent(pose, ctx),
                utterance,
            }
        }
        NpcBrain::Demonstrator {
            phase,
            switch,
            switch_front,
            door,
            door_front,
        } => match *phase {
            DemoPhase::Waiting if events.eye_contact => {
                *phase = DemoPhase::ToSwitch;
                NpcTurn::say(LOOK_AT_ME)
            }
            DemoPhase::Waiting => NpcTurn::act(look_at_agent(pose, ctx)),
            DemoPhase::ToSwitch => {
                if pose.pos == *switch_front {
                    *phase = DemoPhase::ToDoor;
                    NpcTurn::act(NpcAction::Toggle(*switch))
                } else {
                    NpcTurn::act(walk_toward(pose.pos, *switch_front, ctx))
                }
            }
            DemoPhase::ToDoor => {
                if pose.pos == *door_front {
                    NpcTurn::act(NpcAction::Exit(*door))
                } else {
                    NpcTurn::act(walk_toward(pose.pos, *door_front, ctx))
                }
            }
            DemoPhase::Gone => NpcTurn::idle(),
        },
        NpcBrain::Helper {
            phase,
            target,
            switches,
            doors,
        } => match *phase {
            HelperPhase::Approach => {
                *target = closest_door(ctx.agent.pos, doors);
                let front = switches[*target].step(Orientation::East);
                if pose.pos == front {
                    *phase = HelperPhase::Waiting;
                    NpcTurn::act(face(pose, Orientation::East))
                } else {
                    NpcTurn::act(walk_toward(pose.pos, front, ctx))
                }
            }
            HelperPhase::Waiting if events.eye_contact => {
                *phase = HelperPhase::Done;
                NpcTurn::act(NpcAction::Toggle(switches[*target]))
            }
            HelperPhase::Waiting => NpcTurn::act(face(pose, Orientation::East)),
            HelperPhase::Done => NpcTurn::idle(),
        },
        NpcBrain::Exiter { phase, door } => match *phase {
            ExiterPhase::Approach => {
                let front = door.step(Orientation::West);
                if pose.pos == front {
                    *phase = ExiterPhase::Waiting;
                    NpcTurn::act(face(pose, Orientation::West))
                } else {
                    NpcTurn::act(walk_toward(pose.pos, front, ctx))
                }
            }
            ExiterPhase::Waiting if events.eye_contact => {
                *phase = ExiterPhase::Exiting;
                NpcTurn::act(NpcAction::Exit(*door))
            }
            ExiterPhase::Waiting => NpcTurn::act(face(pose, Orientation::West)),
            ExiterPhase::Exiting => NpcTurn::act(NpcAction::Exit(*door)),
            ExiterPhase::Gone => NpcTurn::idle(),
        },
    }
}

/// Index of the door nearest to `from` (Manhattan); ties go to the upper door.
pub fn closest_door(from: Pos, doors: &[Pos; 2]) -> usize {
    let d0 = (from.manhattan(doors[0]), doors[0].y);
    let d1 = (from.manhattan(doors[1]), doors[1].y);
    if d1 < d0 {
        1
    } else {
        0
    }
}

/// Records that the NPC walked out through a door.
pub fn mark_exited(npc: &mut NpcState) {
    npc.present = false;
    match &mut npc.brain {
        NpcBrain::Demonstrator { phase, .. } => *phase = DemoPhase::Gone,
        NpcBrain::Exiter { phase, .. } => *phase = ExiterPhase::Gone,
        _ => {}
    }
}
