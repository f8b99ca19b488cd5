use serde::{Deserialize, Serialize};

use super::pose::{Pos, Pose};

/// Navigation primitive. Index 0 on the wire is the explicit no-op and has
/// no variant; an absent primitive is `Option::None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Primitive {
    TurnLeft = 1,
    TurnRight = 2,
    Forward = 3,
    Pickup = 4,
    Drop = 5,
    Toggle = 6,
    Done = 7,
}

impl Primitive {
    pub const ALL: [Primitive; 7] = [
        Primitive::TurnLeft,
        Primitive::TurnRight,
        Primitive::Forward,
        Primitive::Pickup,
        Primitive::Drop,
        Primitive::Toggle,
        Primitive::Done,
    ];

    pub const MOVEMENT: [Primitive; 3] = [
        Primitive::TurnLeft,
        Primitive::TurnRight,
        Primitive::Forward,
    ];

    /// Wire index to primitive; `Ok(None)` for the no-op index 0.
    pub fn from_index(i: u8) -> Result<Option<Primitive>, u8> {
        match i {
            0 => Ok(None),
            1..=7 => Ok(Some(Self::ALL[(i - 1) as usize])),
            other => Err(other),
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Primitive::TurnLeft => "turn_left",
            Primitive::TurnRight => "turn_right",
            Primitive::Forward => "forward",
            Primitive::Pickup => "pickup",
            Primitive::Drop => "drop",
            Primitive::Toggle => "toggle",
            Primitive::Done => "done",
        }
    }
}

/// What the shared primitive semantics did; toggle and done are left to the
/// active environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotionOutcome {
    Idle,
    Turned,
    Moved,
    Blocked,
    Toggle { target: Pos },
    Done,
}

/// Applies turns and forward motion to `pose`. `is_free` decides whether the
/// cell ahead can be entered.
pub fn apply_motion(
    pose: &mut Pose,
    primitive: Option<Primitive>,
    is_free: impl Fn(Pos) -> bool,
) -> MotionOutcome {
    match primitive {
        None | Some(Primitive::Pickup) | Some(Primitive::Drop) => MotionOutcome::Idle,
        Some(Primitive::TurnLeft) => {
            *pose = pose.turned_left();
            MotionOutcome::Turned
        }
        Some(Primitive::TurnRight) => {
            *pose = pose.turned_right();
            MotionOutcome::Turned
        }
        Some(Primitive::Forward) => {
            let ahead = pose.front();
            if is_free(ahead) {
                pose.pos = ahead;
                MotionOutcome::Moved
            } else {
                MotionOutcome::Blocked
            }
        }
        Some(Primitive::Toggle) => MotionOutcome::Toggle {
            target: pose.front(),
        },
        Some(Primitive::Done) => MotionOutcome::Done,
    }
}
