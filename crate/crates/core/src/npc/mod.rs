//! Social perception and the scripted NPC state machines.

mod fsm;
mod perception;

pub use fsm::*;
pub use perception::{
    clear_line, compute_social_events, eye_contact, gaze_toward, AgentBehaviour, SocialEvents,
};
