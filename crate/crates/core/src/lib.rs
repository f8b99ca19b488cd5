//! Deterministic engine for single-room grid worlds in which an agent must
//! cooperate with scripted non-player characters (NPCs) through movement,
//! gaze and a small template grammar.
//!
//! ```
//! use socialai_core::{env, EnvId, EnvSpec, RawAction};
//!
//! let (mut state, obs) = env::reset(EnvSpec::new(EnvId::TalkItOut), 7).unwrap();
//! assert_eq!(obs.utterance, "<empty>");
//! let r = env::step(&mut state, RawAction([Some(3), None, None])).unwrap();
//! assert_eq!(r.reward, 0.0);
//! ```

pub mod agents;
pub mod env;
pub mod grammar;
pub mod grid;
pub mod harness;
pub mod npc;
pub mod observation;
pub mod scalar;
pub mod shaping;

pub use env::{EnvError, EnvId, EnvSpec, Outcome, Role, StepResult, WorldState};
pub use grammar::{Action, ActionError, Grammar, GrammarDoc, Phrase, RawAction};
pub use observation::Observation;
pub use scalar::Scalar;

/// Scalar used for rewards throughout the engine.
pub type Reward = f64;
