//! Egocentric map built by dead reckoning from observations alone.

use std::collections::BTreeMap;

use super::steer::{heading, turn_toward};
use crate::grid::cell::{TYPE_DOOR, TYPE_EMPTY, TYPE_UNSEEN};
use crate::grid::view::view_to_world;
use crate::grid::{nav, CellEncoding, Orientation, Pos, Pose, Primitive, AGENT_VIEW};
use crate::observation::Observation;

/// Cells seen so far, in a frame anchored at the agent's start pose
/// (start cell at the origin, initial heading east).
#[derive(Debug, Clone)]
pub struct EgoMap {
    pub pose: Pose,
    cells: BTreeMap<Pos, CellEncoding>,
}

impl Default for EgoMap {
    fn default() -> Self {
        EgoMap {
            pose: Pose::new(0, 0, Orientation::East),
            cells: BTreeMap::new(),
        }
    }
}

impl EgoMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p: Pos) -> Option<CellEncoding> {
        self.cells.get(&p).copied()
    }

    /// Updates the estimated pose with the effect `action` must have had,
    /// judged from the map before the step.
    pub fn advance(&mut self, action: Option<Primitive>) {
        match action {
            Some(Primitive::TurnLeft) => self.pose = self.pose.turned_left(),
            Some(Primitive::TurnRight) => self.pose = self.pose.turned_right(),
            Some(Primitive::Forward) => {
                let front = self.pose.front();
                if self.walkable(front) {
                    self.pose.pos = front;
                }
            }
            _ => {}
        }
    }

    pub fn observe(&mut self, obs: &Observation) {
        for (row, cells) in obs.grid.iter().enumerate() {
            for (col, enc) in cells.iter().enumerate() {
                if enc.type_code != TYPE_UNSEEN {
                    self.cells
                        .insert(view_to_world(&self.pose, AGENT_VIEW, row, col), *enc);
                }
            }
        }
    }

    pub fn walkable(&self, p: Pos) -> bool {
        self.get(p).is_some_and(|e| e.type_code == TYPE_EMPTY)
    }

    pub fn doors(&self) -> Vec<Pos> {
        self.cells
            .iter()
            .filter(|(_, e)| e.type_code == TYPE_DOOR)
            .map(|(p, _)| *p)
            .collect()
    }

    pub fn door_is_open(&self, p: Pos) -> bool {
        self.get(p)
            .is_some_and(|e| e.type_code == TYPE_DOOR && e.status_code == 1)
    }

    /// Known walkable cell touching `door`.
    pub fn door_front(&self, door: Pos) -> Option<Pos> {
        door.neighbors().into_iter().find(|p| self.walkable(*p))
    }

    /// Next primitive toward `cell`, ending facing `dir`; `None` once there
    /// or when no known route exists.
    pub fn route(&self, cell: Pos, dir: Orientation) -> Option<Primitive> {
        if self.pose.pos == cell {
            return (self.pose.dir != dir).then(|| turn_toward(self.pose.dir, dir));
        }
        let path = nav::shortest_path(self.pose.pos, |p| p == cell, |p| self.walkable(p))?;
        let want = heading(self.pose.pos, path[0])?;
        Some(if want == self.pose.dir {
            Primitive::Forward
        } else {
            turn_toward(self.pose.dir, want)
        })
    }

    pub fn can_reach(&self, cell: Pos) -> bool {
        self.pose.pos == cell
            || nav::shortest_path(self.pose.pos, |p| p == cell, |p| self.walkable(p)).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dead_reckoning_follows_turns_and_blocked_moves() {
        let mut m = EgoMap::new();
        let mut obs = Observation {
            grid: [[CellEncoding::EMPTY; 7]; 7],
            utterance: "<empty>".into(),
            history: String::new(),
        };
        obs.grid[5][3] = CellEncoding::new(2, 5, 0, 0);
        m.observe(&obs);
        assert_eq!(m.get(Pos::new(1, 0)).unwrap().type_code, 2);
        m.advance(Some(Primitive::Forward));
        assert_eq!(m.pose.pos, Pos::new(0, 0));
        m.advance(Some(Primitive::TurnRight));
        m.advance(Some(Primitive::Forward));
        assert_eq!(m.pose, Pose::new(0, 1, Orientation::South));
    }
}
