//! Episode runner, evaluation, traces, rendering and the wire protocol.

mod eval;
mod play;
pub mod protocol;
mod render;
mod trace;

pub use eval::{
    evaluate, evaluate_runs, role_transfer_eval, run_episode, EpisodeRun, EvalReport, RoleTransfer,
};
pub use play::{parse_command, play, PLAY_HELP};
pub use render::render_ascii;
pub use trace::{
    digest, fnv1a64, replay, EpisodeTrace, TraceHeader, TraceStep, Verdict, ENGINE_VERSION,
};

use crate::agents::PolicyError;
use crate::env::EnvError;
use crate::grammar::ActionError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Config(String),
}
