//! Grid geometry, cell encoding, primitive motion and the extrinsic reward.

pub mod cell;
pub mod nav;
pub mod pose;
pub mod primitive;
pub mod reward;
pub mod view;
pub mod world;

pub use cell::{CellEncoding, Color, DoorState, Entity};
pub use pose::{Orientation, Pos, Pose};
pub use primitive::{apply_motion, MotionOutcome, Primitive};
pub use reward::{extrinsic_reward, RewardError, RewardParams};
pub use view::{encode_view, visible_cells, CellSource, AGENT_VIEW, THIEF_VIEW};
pub use world::GridWorld;
