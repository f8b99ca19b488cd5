use serde::{Deserialize, Serialize};

/// Heading of an agent or NPC. The discriminant is the observation code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Orientation {
    East = 0,
    South = 1,
    West = 2,
    North = 3,
}

impl Orientation {
    pub const ALL: [Orientation; 4] = [
        Orientation::East,
        Orientation::South,
        Orientation::West,
        Orientation::North,
    ];

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Orientation::East => "east",
            Orientation::South => "south",
            Orientation::West => "west",
            Orientation::North => "north",
        }
    }

    /// Quarter turn clockwise (turn right in a y-down grid).
    pub fn right(self) -> Self {
        Self::ALL[(self as usize + 1) % 4]
    }

    pub fn left(self) -> Self {
        Self::ALL[(self as usize + 3) % 4]
    }

    pub fn reverse(self) -> Self {
        Self::ALL[(self as usize + 2) % 4]
    }

    pub fn delta(self) -> (i32, i32) {
        match self {
            Orientation::East => (1, 0),
            Orientation::South => (0, 1),
            Orientation::West => (-1, 0),
            Orientation::North => (0, -1),
        }
    }

    /// Orientation whose unit step is `(dx, dy)`, if it is one.
    pub fn from_delta(dx: i32, dy: i32) -> Option<Self> {
        match (dx, dy) {
            (1, 0) => Some(Orientation::East),
            (0, 1) => Some(Orientation::South),
            (-1, 0) => Some(Orientation::West),
            (0, -1) => Some(Orientation::North),
            _ => None,
        }
    }
}

/// Integer cell coordinate; `x` is the column and `y` the row (y grows downward).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub const fn new(x: i32, y: i32) -> Self {
        Pos { x, y }
    }

    pub fn step(self, dir: Orientation) -> Pos {
        self.offset(dir, 1)
    }

    pub fn offset(self, dir: Orientation, n: i32) -> Pos {
        let (dx, dy) = dir.delta();
        Pos::new(self.x + dx * n, self.y + dy * n)
    }

    pub fn manhattan(self, other: Pos) -> i32 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }

    pub fn is_adjacent(self, other: Pos) -> bool {
        self.manhattan(other) == 1
    }

    pub fn neighbors(self) -> [Pos; 4] {
        Orientation::ALL.map(|d| self.step(d))
    }
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pose {
    pub pos: Pos,
    pub dir: Orientation,
}

impl Pose {
    pub const fn new(x: i32, y: i32, dir: Orientation) -> Self {
        Pose {
            pos: Pos::new(x, y),
            dir,
        }
    }

    pub fn front(&self) -> Pos {
        self.pos.step(self.dir)
    }

    pub fn turned_left(self) -> Self {
        Pose {
            dir: self.dir.left(),
            ..self
        }
    }

    pub fn turned_right(self) -> Self {
        Pose {
            dir: self.dir.right(),
            ..self
        }
    }

    /// World cell seen at `forward` cells ahead and `lateral` cells to the right.
    pub fn relative(&self, forward: i32, lateral: i32) -> Pos {
        self.pos
            .offset(self.dir, forward)
            .offset(self.dir.right(), lateral)
    }

    /// Whether the orientation ray from this pose passes through `target`.
    pub fn faces(&self, target: Pos) -> bool {
        let (dx, dy) = self.dir.delta();
        let (tx, ty) = (target.x - self.pos.x, target.y - self.pos.y);
        if (tx, ty) == (0, 0) {
            return false;
        }
        match (dx, dy) {
            (0, _) => tx == 0 && ty.signum() == dy,
            _ => ty == 0 && tx.signum() == dx,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turning_cycles() {
        for d in Orientation::ALL {
            assert_eq!(d.left().right(), d);
            assert_eq!(d.right().right().right().right(), d);
            assert_eq!(d.reverse(), d.left().left());
        }
        assert_eq!(Orientation::East.right(), Orientation::South);
        assert_eq!(Orientation::North.left(), Orientation::West);
    }

    #[test]
    fn relative_offsets_follow_heading() {
        let p = Pose::new(3, 3, Orientation::East);
        assert_eq!(p.relative(2, 0), Pos::new(5, 3));
        // right of east is south in a y-down grid
        assert_eq!(p.relative(0, 1), Pos::new(3, 4));
        let n = Pose::new(3, 3, Orientation::North);
        assert_eq!(n.relative(1, 1), Pos::new(4, 2));
    }

    #[test]
    fn faces_along_ray_only() {
        let p = Pose::new(2, 3, Orientation::East);
        assert!(p.faces(Pos::new(5, 3)));
        assert!(!p.faces(Pos::new(1, 3)));
        assert!(!p.faces(Pos::new(5, 4)));
        assert!(!p.faces(Pos::new(2, 3)));
    }
}
