//! Entity kinds and the fixed 4-integer cell encoding.
//!
//! | code | kind    | color       | status                              | orientation |
//! |------|---------|-------------|-------------------------------------|-------------|
//! | 0    | unseen  | 0           | 0                                   | 0           |
//! | 1    | empty   | 0           | 0                                   | 0           |
//! | 2    | wall    | grey (5)    | 0                                   | 0           |
//! | 3    | lava    | red (0)     | 0                                   | 0           |
//! | 4    | door    | door color  | 0 closed, 1 open, 2 locked          | 0           |
//! | 5    | switch  | color       | 0 (activation is not visible)       | 0           |
//! | 6    | coin    | yellow (4)  | 0, or 1 when tagged as thief-visible| 0           |
//! | 11   | NPC     | NPC color   | subtype (wizard 0, guide 1, else 0) | heading     |

use serde::{Deserialize, Serialize};

pub const TYPE_UNSEEN: u8 = 0;
pub const TYPE_EMPTY: u8 = 1;
pub const TYPE_WALL: u8 = 2;
pub const TYPE_LAVA: u8 = 3;
pub const TYPE_DOOR: u8 = 4;
pub const TYPE_SWITCH: u8 = 5;
pub const TYPE_COIN: u8 = 6;
pub const TYPE_NPC: u8 = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Color {
    Red = 0,
    Green = 1,
    Blue = 2,
    Purple = 3,
    Yellow = 4,
    Grey = 5,
}

impl Color {
    pub const ALL: [Color; 6] = [
        Color::Red,
        Color::Green,
        Color::Blue,
        Color::Purple,
        Color::Yellow,
        Color::Grey,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
            Color::Purple => "purple",
            Color::Yellow => "yellow",
            Color::Grey => "grey",
        }
    }

    pub fn from_name(name: &str) -> Option<Color> {
        Color::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DoorState {
    Closed,
    Open,
    Locked,
}

impl DoorState {
    pub fn code(self) -> u8 {
        match self {
            DoorState::Closed => 0,
            DoorState::Open => 1,
            DoorState::Locked => 2,
        }
    }
}

/// Static content of a grid cell. NPCs and the agent live outside the cell map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Entity {
    Wall,
    Lava,
    Door { color: Color, state: DoorState },
    Switch { color: Color },
    Coin,
}

impl Entity {
    pub fn encode(&self) -> CellEncoding {
        match *self {
            Entity::Wall => CellEncoding::new(TYPE_WALL, Color::Grey.code(), 0, 0),
            Entity::Lava => CellEncoding::new(TYPE_LAVA, Color::Red.code(), 0, 0),
            Entity::Door { color, state } => {
                CellEncoding::new(TYPE_DOOR, color.code(), state.code(), 0)
            }
            Entity::Switch { color } => CellEncoding::new(TYPE_SWITCH, color.code(), 0, 0),
            Entity::Coin => CellEncoding::new(TYPE_COIN, Color::Yellow.code(), 0, 0),
        }
    }

    /// Walls, lava, switches, coins and non-open doors cannot be entered.
    pub fn is_passable(&self) -> bool {
        matches!(
            self,
            Entity::Door {
                state: DoorState::Open,
                ..
            }
        )
    }

    /// Walls and non-open doors stop the view cone.
    pub fn blocks_sight(&self) -> bool {
        match self {
            Entity::Wall => true,
            Entity::Door { state, .. } => *state != DoorState::Open,
            _ => false,
        }
    }
}

/// `(type, color, status, orientation)` for one observed cell.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(from = "[u8; 4]", into = "[u8; 4]")]
pub struct CellEncoding {
    pub type_code: u8,
    pub color_code: u8,
    pub status_code: u8,
    pub orientation_code: u8,
}

impl CellEncoding {
    pub const UNSEEN: CellEncoding = CellEncoding::new(TYPE_UNSEEN, 0, 0, 0);
    pub const EMPTY: CellEncoding = CellEncoding::new(TYPE_EMPTY, 0, 0, 0);

    pub const fn new(type_code: u8, color_code: u8, status_code: u8, orientation_code: u8) -> Self {
        CellEncoding {
            type_code,
            color_code,
            status_code,
            orientation_code,
        }
    }

    pub fn to_array(self) -> [u8; 4] {
        [
            self.type_code,
            self.color_code,
            self.status_code,
            self.orientation_code,
        ]
    }

    pub fn is_npc(&self) -> bool {
        self.type_code == TYPE_NPC
    }
}

impl From<[u8; 4]> for CellEncoding {
    fn from(a: [u8; 4]) -> Self {
        CellEncoding::new(a[0], a[1], a[2], a[3])
    }
}

impl From<CellEncoding> for [u8; 4] {
    fn from(c: CellEncoding) -> Self {
        c.to_array()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_codes() {
        assert_eq!(CellEncoding::EMPTY.to_array(), [1, 0, 0, 0]);
        let locked = Entity::Door {
            color: Color::Blue,
            state: DoorState::Locked,
        };
        assert_eq!(locked.encode().to_array(), [4, 2, 2, 0]);
        assert!(locked.blocks_sight());
        assert!(!locked.is_passable());
        let open = Entity::Door {
            color: Color::Blue,
            state: DoorState::Open,
        };
        assert!(open.is_passable() && !open.blocks_sight());
        assert!(!Entity::Lava.blocks_sight());
        assert!(!Entity::Lava.is_passable());
    }

    #[test]
    fn color_names_round_trip() {
        for c in Color::ALL {
            assert_eq!(Color::from_name(c.name()), Some(c));
        }
    }
}
