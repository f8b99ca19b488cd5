//! Navigation for privileged policies.

use crate::env::WorldState;
use crate::grid::{nav, Entity, Orientation, Pos, Primitive};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Facing {
    Any,
    Toward(Orientation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Steer {
    Arrived,
    Act(Primitive),
    /// No route right now, usually because an NPC is in the way.
    Stuck,
}

/// The turn that brings `cur` closest to `want`.
pub fn turn_toward(cur: Orientation, want: Orientation) -> Primitive {
    if cur.left() == want {
        Primitive::TurnLeft
    } else {
        Primitive::TurnRight
    }
}

/// Heading of the step from `from` to the adjacent cell `to`.
pub fn heading(from: Pos, to: Pos) -> Option<Orientation> {
    Orientation::from_delta(to.x - from.x, to.y - from.y)
}

/// Next primitive toward a cell accepted by `goal`, which also says how the
/// agent must face once there.
pub fn steer(state: &WorldState, goal: impl Fn(Pos) -> Option<Facing>) -> Steer {
    let here = state.agent;
    if let Some(f) = goal(here.pos) {
        return match f {
            Facing::Toward(d) if d != here.dir => Steer::Act(turn_toward(here.dir, d)),
            _ => Steer::Arrived,
        };
    }
    // door cells lead out of the room, never through it
    let passable =
        |p: Pos| state.is_free(p) && !matches!(state.grid.get(p), Some(Entity::Door { .. }));
    let Some(path) = nav::shortest_path(here.pos, |p| passable(p) && goal(p).is_some(), passable)
    else {
        return Steer::Stuck;
    };
    let next = path[0];
    let want = heading(here.pos, next).expect("paths are 4-connected");
    if want == here.dir {
        Steer::Act(Primitive::Forward)
    } else {
        Steer::Act(turn_toward(here.dir, want))
    }
}

/// Goal: stand on `cell` facing `dir`.
pub fn at(cell: Pos, dir: Orientation) -> impl Fn(Pos) -> Option<Facing> {
    move |p| (p == cell).then_some(Facing::Toward(dir))
}

/// Goal: any cell next to `target`, facing it.
pub fn beside(target: Pos) -> impl Fn(Pos) -> Option<Facing> {
    move |p| {
        p.is_adjacent(target)
            .then(|| Facing::Toward(heading(p, target).expect("adjacent")))
    }
}
