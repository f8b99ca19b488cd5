use serde::{Deserialize, Serialize};

use crate::grid::{CellEncoding, AGENT_VIEW};

pub type ViewGrid = [[CellEncoding; AGENT_VIEW]; AGENT_VIEW];

/// What the agent perceives after each step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Observation {
    /// `grid[row][col]`; row 0 is farthest ahead, the agent is at `[6][3]`.
    pub grid: ViewGrid,
    /// NPC speech heard this step, or the empty indicator.
    pub utterance: String,
    /// Everything heard so far this episode, separated by single spaces.
    pub history: String,
}

impl Observation {
    pub fn cells(&self) -> impl Iterator<Item = &CellEncoding> {
        self.grid.iter().flatten()
    }

    /// Cell `forward` rows ahead of the agent and `lateral` columns to its right.
    pub fn relative(&self, forward: usize, lateral: i32) -> Option<CellEncoding> {
        let row = (AGENT_VIEW - 1).checked_sub(forward)?;
        let col = usize::try_from(AGENT_VIEW as i32 / 2 + lateral).ok()?;
        self.grid.get(row)?.get(col).copied()
    }

    /// Canonical byte serialization used for digests: the 196 grid bytes in
    /// row-major `(type, color, status, orientation)` order, the current
    /// utterance in UTF-8, a 0x00 byte, then the history in UTF-8.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(
            AGENT_VIEW * AGENT_VIEW * 4 + self.utterance.len() + self.history.len() + 1,
        );
        for c in self.cells() {
            out.extend_from_slice(&c.to_array());
        }
        out.extend_from_slice(self.utterance.as_bytes());
        out.push(0);
        out.extend_from_slice(self.history.as_bytes());
        out
    }
}
