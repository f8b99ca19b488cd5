use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dance::{DancePattern, RecordedStep};
use super::spec::{EnvId, EnvSpec, Role};
use crate::grammar::Dialogue;
use crate::grid::{encode_view, CellEncoding, CellSource, Color, Entity, GridWorld, Pos, Pose};
use crate::npc::NpcState;
use crate::observation::Observation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Success,
    Failure,
    Timeout,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Failure => "failure",
            Outcome::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Running,
    Finished(Outcome),
}

/// A door on the outer wall and the interior cell in front of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoorSpot {
    pub pos: Pos,
    pub front: Pos,
    pub color: Color,
}

/// Environment-specific episode state that does not belong to an NPC.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Task {
    TalkItOut {
        doors: Vec<DoorSpot>,
        correct: usize,
    },
    Dance {
        pattern: DancePattern,
        recorded: Vec<RecordedStep>,
    },
    CoinThief {
        coins: Vec<Pos>,
        /// Union of the thief's two 5×5 views.
        thief_view: BTreeSet<Pos>,
        visible_coins: usize,
        tagged: bool,
    },
    DiverseExit {
        doors: Vec<DoorSpot>,
        correct: usize,
        npc_type: usize,
    },
    ShowMe {
        door: DoorSpot,
        switches: [DoorSpot; 3],
        correct: usize,
        /// Switch currently activated; cleared when the demonstrator leaves.
        activated: Option<usize>,
        agent_presses: u32,
        npc_exited: bool,
    },
    Help {
        role: Role,
        doors: [DoorSpot; 2],
        switches: [DoorSpot; 2],
        pressed: [bool; 2],
    },
}

/// Complete mutable state of one episode.
#[derive(Debug, Clone)]
pub struct WorldState {
    /// What the caller asked for (SocialEnv stays SocialEnv here).
    pub spec: EnvSpec,
    /// The environment whose rules are in force.
    pub active: EnvId,
    pub seed: u64,
    pub grid: GridWorld,
    pub agent: Pose,
    pub npcs: Vec<NpcState>,
    pub task: Task,
    pub t: u32,
    pub t_max: u32,
    pub status: Status,
    pub dialogue: Dialogue,
    pub(crate) rng: ChaCha8Rng,
}

impl WorldState {
    pub fn is_done(&self) -> bool {
        matches!(self.status, Status::Finished(_))
    }

    pub fn outcome(&self) -> Option<Outcome> {
        match self.status {
            Status::Finished(o) => Some(o),
            Status::Running => None,
        }
    }

    pub fn npc_at(&self, p: Pos) -> Option<usize> {
        self.npcs.iter().position(|n| n.present && n.pose.pos == p)
    }

    /// Whether a body may enter `p` (walkable cell, no agent, no NPC).
    pub fn is_free(&self, p: Pos) -> bool {
        self.grid.is_walkable(p) && self.agent.pos != p && self.npc_at(p).is_none()
    }

    /// Cells that interrupt eye contact: sight blockers and NPC bodies.
    pub fn gaze_blocked(&self, p: Pos) -> bool {
        self.grid.blocks_sight(p) || self.npc_at(p).is_some()
    }

    pub fn observe(&self) -> Observation {
        Observation {
            grid: encode_view(self, &self.agent),
            utterance: self.dialogue.current_text(),
            history: self.dialogue.history_text(),
        }
    }
}

impl CellSource for WorldState {
    fn in_bounds(&self, p: Pos) -> bool {
        self.grid.in_bounds(p)
    }

    fn encode_cell(&self, p: Pos) -> CellEncoding {
        if let Some(i) = self.npc_at(p) {
            return self.npcs[i].encode();
        }
        match (self.grid.get(p), &self.task) {
            (
                Some(Entity::Coin),
                Task::CoinThief {
                    thief_view,
                    tagged: true,
                    ..
                },
            ) if thief_view.contains(&p) => CellEncoding {
                status_code: 1,
                ..Entity::Coin.encode()
            },
            (Some(e), _) => e.encode(),
            (None, _) => CellEncoding::EMPTY,
        }
    }

    fn blocks_sight(&self, p: Pos) -> bool {
        self.grid.blocks_sight(p)
    }
}
