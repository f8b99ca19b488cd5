//! Introductory configurations: how each DiverseExit NPC wants to be asked.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntroUtterance {
    WhereIsTheExit,
    WhichIsTheCorrectDoor,
}

impl IntroUtterance {
    pub fn text(self) -> &'static str {
        match self {
            IntroUtterance::WhereIsTheExit => "Where is the exit",
            IntroUtterance::WhichIsTheCorrectDoor => "Which is the correct door",
        }
    }

    pub fn from_text(s: &str) -> Option<Self> {
        [
            IntroUtterance::WhereIsTheExit,
            IntroUtterance::WhichIsTheCorrectDoor,
        ]
        .into_iter()
        .find(|u| u.text() == s)
    }
}

/// Social context latched at the agent's first introductory utterance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntroductoryConfiguration {
    pub next_to: bool,
    pub poked: bool,
    pub eye_contact: bool,
    pub utterance: IntroUtterance,
}

pub const NPC_TYPES: usize = 12;

/// Preferred configuration of NPC type `0..12`.
pub fn preference(npc_type: usize) -> IntroductoryConfiguration {
    assert!(
        npc_type < NPC_TYPES,
        "DiverseExit has {NPC_TYPES} NPC types"
    );
    // rows cycle (next+poked, next, not next) within each utterance, utterance
    // within eye contact
    let (next_to, poked) = match npc_type % 3 {
        0 => (true, true),
        1 => (true, false),
        _ => (false, false),
    };
    let utterance = if (npc_type / 3).is_multiple_of(2) {
        IntroUtterance::WhereIsTheExit
    } else {
        IntroUtterance::WhichIsTheCorrectDoor
    };
    IntroductoryConfiguration {
        next_to,
        poked,
        eye_contact: npc_type < 6,
        utterance,
    }
}
