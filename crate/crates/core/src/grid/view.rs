//! Forward-facing square view cones with wall occlusion.
//!
//! A view of side `n` (odd) is laid out in the viewer's frame: row 0 is the
//! farthest row ahead, row `n - 1` is the viewer's own row, column 0 is the
//! viewer's far left. The viewer sits at `(row n - 1, column n / 2)`.

use std::collections::BTreeSet;

use super::cell::CellEncoding;
use super::pose::{Pos, Pose};
use super::world::GridWorld;

pub const AGENT_VIEW: usize = 7;
pub const THIEF_VIEW: usize = 5;

/// Anything that can be looked at cell by cell.
pub trait CellSource {
    fn in_bounds(&self, p: Pos) -> bool;
    fn encode_cell(&self, p: Pos) -> CellEncoding;
    fn blocks_sight(&self, p: Pos) -> bool;
}

impl CellSource for GridWorld {
    fn in_bounds(&self, p: Pos) -> bool {
        GridWorld::in_bounds(self, p)
    }

    fn encode_cell(&self, p: Pos) -> CellEncoding {
        self.get(p).map_or(CellEncoding::EMPTY, |e| e.encode())
    }

    fn blocks_sight(&self, p: Pos) -> bool {
        GridWorld::blocks_sight(self, p)
    }
}

/// World position of view cell `(row, col)`.
pub fn view_to_world(pose: &Pose, size: usize, row: usize, col: usize) -> Pos {
    let forward = (size - 1 - row) as i32;
    let lateral = col as i32 - (size / 2) as i32;
    pose.relative(forward, lateral)
}

/// Visibility mask in the viewer frame, `mask[row][col]`.
///
/// Light spreads from the viewer's cell sideways along each row and one row
/// forward, and stops at any cell that blocks sight (the blocking cell itself
/// stays visible). Cells outside the grid block and are never visible.
pub fn view_mask<S: CellSource + ?Sized>(src: &S, pose: &Pose, size: usize) -> Vec<Vec<bool>> {
    assert!(size % 2 == 1 && size >= 3, "view size must be odd and >= 3");
    let see_through = |row: usize, col: usize| {
        let p = view_to_world(pose, size, row, col);
        src.in_bounds(p) && !src.blocks_sight(p)
    };
    let mut mask = vec![vec![false; size]; size];
    mask[size - 1][size / 2] = true;
    for row in (0..size).rev() {
        for col in 0..size - 1 {
            if !mask[row][col] || !see_through(row, col) {
                continue;
            }
            mask[row][col + 1] = true;
            if row > 0 {
                mask[row - 1][col + 1] = true;
                mask[row - 1][col] = true;
            }
        }
        for col in (1..size).rev() {
            if !mask[row][col] || !see_through(row, col) {
                continue;
            }
            mask[row][col - 1] = true;
            if row > 0 {
                mask[row - 1][col - 1] = true;
                mask[row - 1][col] = true;
            }
        }
    }
    for (row, line) in mask.iter_mut().enumerate() {
        for (col, m) in line.iter_mut().enumerate() {
            if !src.in_bounds(view_to_world(pose, size, row, col)) {
                *m = false;
            }
        }
    }
    mask
}

/// World cells inside the `size`×`size` view of `pose`, after occlusion.
pub fn visible_cells<S: CellSource + ?Sized>(pose: &Pose, size: usize, src: &S) -> BTreeSet<Pos> {
    let mask = view_mask(src, pose, size);
    let mut out = BTreeSet::new();
    for (row, line) in mask.iter().enumerate() {
        for (col, &m) in line.iter().enumerate() {
            if m {
                out.insert(view_to_world(pose, size, row, col));
            }
        }
    }
    out
}

/// The 7×7 symbolic view used as the agent's visual observation.
pub fn encode_view<S: CellSource + ?Sized>(
    src: &S,
    pose: &Pose,
) -> [[CellEncoding; AGENT_VIEW]; AGENT_VIEW] {
    let mask = view_mask(src, pose, AGENT_VIEW);
    let mut grid = [[CellEncoding::UNSEEN; AGENT_VIEW]; AGENT_VIEW];
    for (row, line) in grid.iter_mut().enumerate() {
        for (col, cell) in line.iter_mut().enumerate() {
            if mask[row][col] {
                *cell = src.encode_cell(view_to_world(pose, AGENT_VIEW, row, col));
            }
        }
    }
    grid
}
