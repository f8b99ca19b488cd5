use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::env::EnvId;
use crate::grid::Primitive;

/// Wire form of an action: `[primitive, template, noun]`, `None` = undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RawAction(pub [Option<i64>; 3]);

impl RawAction {
    pub const NOOP: RawAction = RawAction([None, None, None]);
}

/// Template/noun index pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Phrase {
    pub template: u8,
    pub noun: u8,
}

impl Phrase {
    pub const fn new(template: u8, noun: u8) -> Self {
        Phrase { template, noun }
    }
}

/// A validated action. Both language slots are present or neither is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Action {
    pub primitive: Option<Primitive>,
    pub utterance: Option<Phrase>,
}

impl Action {
    pub const NOOP: Action = Action {
        primitive: None,
        utterance: None,
    };

    pub fn go(p: Primitive) -> Self {
        Action {
            primitive: Some(p),
            utterance: None,
        }
    }

    pub fn say(phrase: Phrase) -> Self {
        Action {
            primitive: None,
            utterance: Some(phrase),
        }
    }

    pub fn to_raw(self) -> RawAction {
        RawAction([
            self.primitive.map(|p| p.index() as i64),
            self.utterance.map(|u| u.template as i64),
            self.utterance.map(|u| u.noun as i64),
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Primitive,
    Template,
    Noun,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("template and noun must both be defined or both be undefined")]
    Malformed,
    #[error("{slot:?} index {index} out of range (expected 0..{limit})")]
    OutOfRange {
        slot: Slot,
        index: i64,
        limit: usize,
    },
    #[error("primitive {} is not available in {}; allowed: {}", .primitive.name(), .env.name(), .allowed.join(", "))]
    Rejected {
        env: EnvId,
        primitive: Primitive,
        allowed: Vec<&'static str>,
    },
}

impl ActionError {
    /// Stable error code used by the wire protocol.
    pub fn code(&self) -> &'static str {
        match self {
            ActionError::Malformed => "malformed_action",
            ActionError::OutOfRange { .. } => "out_of_range",
            ActionError::Rejected { .. } => "rejected_action",
        }
    }
}
