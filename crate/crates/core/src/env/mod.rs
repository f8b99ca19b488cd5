//! The environments: layouts, per-environment rules and the reset/step cycle.

pub mod dance;
pub mod diverse_exit;
mod episode;
pub mod layout;
mod spec;
mod state;

use thiserror::Error;

pub use episode::{reset, step, thief_visible_coin_count, StepInfo, StepResult};
pub use spec::{EnvId, EnvSpec, Role, UnknownName};
pub use state::{DoorSpot, Outcome, Status, Task, WorldState};

use crate::grammar::ActionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("the episode is over; reset before stepping again")]
    EpisodeDone,
    #[error("could not sample a solvable {env} layout in {attempts} attempts")]
    Layout { env: EnvId, attempts: u32 },
    #[error("{op} needs a {expected} episode, not {found}")]
    WrongEnv {
        op: &'static str,
        expected: &'static str,
        found: EnvId,
    },
}

impl EnvError {
    pub fn code(&self) -> &'static str {
        match self {
            EnvError::Action(e) => e.code(),
            EnvError::EpisodeDone => "episode_done",
            EnvError::Layout { .. } => "layout_error",
            EnvError::WrongEnv { .. } => "wrong_env",
        }
    }
}
