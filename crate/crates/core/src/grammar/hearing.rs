use serde::{Deserialize, Serialize};

/// Symbol standing in for silence in the current-utterance channel.
pub const EMPTY_INDICATOR: &str = "<empty>";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Utterance {
    pub speaker: String,
    pub text: String,
}

impl Utterance {
    pub fn new(speaker: impl Into<String>, text: impl Into<String>) -> Self {
        Utterance {
            speaker: speaker.into(),
            text: text.into(),
        }
    }

    /// `"Name: text"` as it reaches the listener.
    pub fn heard(&self) -> String {
        format!("{}: {}", self.speaker, self.text)
    }
}

/// What the agent heard this step and over the whole episode.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dialogue {
    current: Vec<Utterance>,
    history: Vec<Utterance>,
}

impl Dialogue {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts a new step: the current channel falls silent.
    pub fn begin_step(&mut self) {
        self.current.clear();
    }

    pub fn hear(&mut self, u: Utterance) {
        self.history.push(u.clone());
        self.current.push(u);
    }

    pub fn current(&self) -> &[Utterance] {
        &self.current
    }

    pub fn history(&self) -> &[Utterance] {
        &self.history
    }

    pub fn current_text(&self) -> String {
        if self.current.is_empty() {
            EMPTY_INDICATOR.to_string()
        } else {
            join(&self.current)
        }
    }

    pub fn history_text(&self) -> String {
        join(&self.history)
    }
}

fn join(us: &[Utterance]) -> String {
    us.iter()
        .map(Utterance::heard)
        .collect::<Vec<_>>()
        .join(" ")
}
