use serde::{Deserialize, Serialize};

use super::cell::Entity;
use super::pose::Pos;

/// Dense cell map. `None` is an empty floor cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridWorld {
    width: i32,
    height: i32,
    cells: Vec<Option<Entity>>,
}

impl GridWorld {
    pub fn empty(width: i32, height: i32) -> Self {
        assert!(width > 0 && height > 0, "grid dimensions must be positive");
        GridWorld {
            width,
            height,
            cells: vec![None; (width * height) as usize],
        }
    }

    /// A room whose outer ring is wall.
    pub fn walled(width: i32, height: i32) -> Self {
        let mut g = Self::empty(width, height);
        for x in 0..width {
            g.set(Pos::new(x, 0), Some(Entity::Wall));
            g.set(Pos::new(x, height - 1), Some(Entity::Wall));
        }
        for y in 0..height {
            g.set(Pos::new(0, y), Some(Entity::Wall));
            g.set(Pos::new(width - 1, y), Some(Entity::Wall));
        }
        g
    }

    pub fn width(&self) -> i32 {
        self.width
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn in_bounds(&self, p: Pos) -> bool {
        p.x >= 0 && p.y >= 0 && p.x < self.width && p.y < self.height
    }

    fn index(&self, p: Pos) -> usize {
        (p.y * self.width + p.x) as usize
    }

    pub fn get(&self, p: Pos) -> Option<Entity> {
        if self.in_bounds(p) {
            self.cells[self.index(p)]
        } else {
            None
        }
    }

    pub fn set(&mut self, p: Pos, e: Option<Entity>) {
        assert!(
            self.in_bounds(p),
            "cell {p} outside {}x{} grid",
            self.width,
            self.height
        );
        let i = self.index(p);
        self.cells[i] = e;
    }

    /// Whether a mobile body could stand on `p`, ignoring other bodies.
    pub fn is_walkable(&self, p: Pos) -> bool {
        self.in_bounds(p) && self.get(p).is_none_or(|e| e.is_passable())
    }

    pub fn blocks_sight(&self, p: Pos) -> bool {
        !self.in_bounds(p) || self.get(p).is_some_and(|e| e.blocks_sight())
    }

    /// Interior cells (everything except the outer ring), row-major.
    pub fn interior(&self) -> impl Iterator<Item = Pos> + '_ {
        (1..self.height - 1).flat_map(move |y| (1..self.width - 1).map(move |x| Pos::new(x, y)))
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        (0..self.height).flat_map(move |y| (0..self.width).map(move |x| Pos::new(x, y)))
    }

    /// Rotates the map a quarter turn clockwise; returns the rotated grid and
    /// the coordinate map from old to new positions.
    pub fn rotated_cw(&self) -> (GridWorld, impl Fn(Pos) -> Pos) {
        let h = self.height;
        let map = move |p: Pos| Pos::new(h - 1 - p.y, p.x);
        let mut out = GridWorld::empty(self.height, self.width);
        for p in self.positions() {
            out.set(map(p), self.get(p));
        }
        (out, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walled_room_ring() {
        let g = GridWorld::walled(8, 8);
        assert_eq!(g.get(Pos::new(0, 3)), Some(Entity::Wall));
        assert_eq!(g.get(Pos::new(3, 3)), None);
        assert_eq!(g.interior().count(), 36);
        assert!(!g.is_walkable(Pos::new(7, 7)));
        assert!(!g.is_walkable(Pos::new(-1, 2)));
    }

    #[test]
    fn rotation_moves_cells() {
        let mut g = GridWorld::empty(3, 2);
        g.set(Pos::new(0, 0), Some(Entity::Coin));
        let (r, map) = g.rotated_cw();
        assert_eq!((r.width(), r.height()), (2, 3));
        assert_eq!(map(Pos::new(0, 0)), Pos::new(1, 0));
        assert_eq!(r.get(Pos::new(1, 0)), Some(Entity::Coin));
    }
}
