//! Breadth-first search over grid cells.

use std::collections::{HashMap, VecDeque};

use super::pose::{Orientation, Pos};

/// Shortest 4-connected path from `start` to any cell accepted by `goal`,
/// moving only through cells accepted by `passable`. The start cell itself
/// need not be passable. Returns the cells after `start`, ending at the goal;
/// empty when `start` already satisfies `goal`.
pub fn shortest_path(
    start: Pos,
    goal: impl Fn(Pos) -> bool,
    passable: impl Fn(Pos) -> bool,
) -> Option<Vec<Pos>> {
    if goal(start) {
        return Some(Vec::new());
    }
    let mut parent: HashMap<Pos, Pos> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    parent.insert(start, start);
    while let Some(cur) = queue.pop_front() {
        for dir in Orientation::ALL {
            let next = cur.step(dir);
            if parent.contains_key(&next) || !passable(next) {
                continue;
            }
            parent.insert(next, cur);
            if goal(next) {
                let mut path = vec![next];
                let mut at = cur;
                while at != start {
                    path.push(at);
                    at = parent[&at];
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(next);
        }
    }
    None
}

/// Every cell reachable from `start` through `passable` cells (start included).
pub fn reachable(start: Pos, passable: impl Fn(Pos) -> bool) -> Vec<Pos> {
    let mut seen = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for next in cur.neighbors() {
            if !seen.contains(&next) && passable(next) {
                seen.push(next);
                queue.push_back(next);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_around_obstacle() {
        let inside = |p: Pos| (0..5).contains(&p.x) && (0..5).contains(&p.y);
        let wall = |p: Pos| p.x == 2 && p.y < 4;
        let path = shortest_path(
            Pos::new(0, 0),
            |p| p == Pos::new(4, 0),
            |p| inside(p) && !wall(p),
        )
        .unwrap();
        assert_eq!(path.len(), 12);
        assert_eq!(*path.last().unwrap(), Pos::new(4, 0));
        assert!(path.windows(2).all(|w| w[0].is_adjacent(w[1])));
    }

    #[test]
    fn unreachable_goal() {
        assert!(shortest_path(
            Pos::new(0, 0),
            |p| p == Pos::new(9, 9),
            |p| p.x.abs() < 3 && p.y.abs() < 3
        )
        .is_none());
        assert_eq!(
            reachable(Pos::new(0, 0), |p| p.x.abs() <= 1 && p.y == 0).len(),
            3
        );
    }
}
