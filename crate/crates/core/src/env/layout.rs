//! Seeded layout sampling for every environment.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::dance::DancePattern;
use super::diverse_exit::{self, NPC_TYPES};
use super::spec::{EnvId, Role};
use super::state::{DoorSpot, Task};
use super::EnvError;
use crate::grid::{
    nav, visible_cells, Color, DoorState, Entity, GridWorld, Orientation, Pos, Pose, THIEF_VIEW,
};
use crate::npc::{DemoPhase, ExiterPhase, HelperPhase, NpcBrain, NpcKind, NpcState, Side};

pub const ROOM: i32 = 8;
pub const MAX_ATTEMPTS: u32 = 200;
pub const HELP_LAVA_X: i32 = 4;
pub const GUIDE_NAMES: [&str; 2] = ["Jack", "John"];

pub struct Layout {
    pub grid: GridWorld,
    pub agent: Pose,
    pub npcs: Vec<NpcState>,
    pub task: Task,
}

/// Draws a layout, resampling unsolvable ones a bounded number of times.
pub fn sample<R: Rng + ?Sized>(env: EnvId, role: Role, rng: &mut R) -> Result<Layout, EnvError> {
    for _ in 0..MAX_ATTEMPTS {
        let layout = match env {
            EnvId::TalkItOut => talk_it_out(rng, true),
            EnvId::TalkItOutNoLiar => talk_it_out(rng, false),
            EnvId::Dance => Some(dance(rng)),
            EnvId::CoinThief => coin_thief(rng, false),
            EnvId::CoinThiefTagged => coin_thief(rng, true),
            EnvId::DiverseExit => Some(diverse_exit(rng)),
            EnvId::ShowMe => Some(show_me(rng)),
            EnvId::Help => Some(help(rng, role)),
            EnvId::SocialEnv => unreachable!("SocialEnv draws a member environment first"),
        };
        if let Some(l) = layout {
            return Ok(l);
        }
    }
    Err(EnvError::Layout {
        env,
        attempts: MAX_ATTEMPTS,
    })
}

fn random_dir<R: Rng + ?Sized>(rng: &mut R) -> Orientation {
    Orientation::ALL[rng.gen_range(0..4)]
}

fn random_color<R: Rng + ?Sized>(rng: &mut R) -> Color {
    Color::ALL[rng.gen_range(0..Color::ALL.len())]
}

fn distinct_colors<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Color> {
    let mut all = Color::ALL.to_vec();
    all.shuffle(rng);
    all.truncate(n);
    all
}

/// Distinct cells drawn without replacement.
fn distinct_cells<R: Rng + ?Sized>(rng: &mut R, candidates: &[Pos], n: usize) -> Vec<Pos> {
    candidates.choose_multiple(rng, n).copied().collect()
}

/// One door on each wall (top, right, bottom, left), anywhere but a corner.
fn wall_doors<R: Rng + ?Sized>(
    rng: &mut R,
    grid: &mut GridWorld,
    colors: &[Color],
) -> Vec<DoorSpot> {
    let (w, h) = (grid.width(), grid.height());
    let x_top = rng.gen_range(1..w - 1);
    let y_right = rng.gen_range(1..h - 1);
    let x_bottom = rng.gen_range(1..w - 1);
    let y_left = rng.gen_range(1..h - 1);
    let spots = [
        (Pos::new(x_top, 0), Pos::new(x_top, 1)),
        (Pos::new(w - 1, y_right), Pos::new(w - 2, y_right)),
        (Pos::new(x_bottom, h - 1), Pos::new(x_bottom, h - 2)),
        (Pos::new(0, y_left), Pos::new(1, y_left)),
    ];
    spots
        .iter()
        .zip(colors)
        .map(|(&(pos, front), &color)| {
            grid.set(
                pos,
                Some(Entity::Door {
                    color,
                    state: DoorState::Closed,
                }),
            );
            DoorSpot { pos, front, color }
        })
        .collect()
}

fn talk_it_out<R: Rng + ?Sized>(rng: &mut R, with_liar: bool) -> Option<Layout> {
    let width = rng.gen_range(5..=8) + 2;
    let height = rng.gen_range(5..=8) + 2;
    let mut grid = GridWorld::walled(width, height);
    let colors = distinct_colors(rng, 4);
    let doors = wall_doors(rng, &mut grid, &colors);
    let correct = rng.gen_range(0..doors.len());

    let fronts: Vec<Pos> = doors.iter().map(|d| d.front).collect();
    let candidates: Vec<Pos> = grid.interior().filter(|p| !fronts.contains(p)).collect();
    let n_npcs = if with_liar { 3 } else { 2 };
    let cells = distinct_cells(rng, &candidates, n_npcs + 1);
    let agent = Pose {
        pos: cells[0],
        dir: random_dir(rng),
    };

    let truthful_name = GUIDE_NAMES[rng.gen_range(0..2)];
    let liar_name = GUIDE_NAMES
        .iter()
        .find(|n| **n != truthful_name)
        .copied()
        .expect("two guide names");
    let correct_color = doors[correct].color;
    let wrong: Vec<Color> = doors
        .iter()
        .filter(|d| d.color != correct_color)
        .map(|d| d.color)
        .collect();

    let mut npcs = vec![
        NpcState::new(
            "Wizard",
            NpcKind::Wizard,
            Pose {
                pos: cells[1],
                dir: random_dir(rng),
            },
            random_color(rng),
            NpcBrain::Wizard {
                true_guide: truthful_name.to_string(),
                introduced: false,
            },
        ),
        NpcState::new(
            truthful_name,
            NpcKind::Guide,
            Pose {
                pos: cells[2],
                dir: random_dir(rng),
            },
            random_color(rng),
            NpcBrain::Guide {
                truthful: true,
                introduced: false,
                correct: correct_color,
                wrong: wrong.clone(),
            },
        ),
    ];
    if with_liar {
        npcs.push(NpcState::new(
            liar_name,
            NpcKind::Guide,
            Pose {
                pos: cells[3],
                dir: random_dir(rng),
            },
            random_color(rng),
            NpcBrain::Guide {
                truthful: false,
                introduced: false,
                correct: correct_color,
                wrong,
            },
        ));
    }

    // every NPC must be approachable and every door front reachable
    let bodies: Vec<Pos> = npcs.iter().map(|n| n.pose.pos).collect();
    let open = nav::reachable(agent.pos, |p| grid.is_walkable(p) && !bodies.contains(&p));
    let approachable = bodies
        .iter()
        .all(|b| b.neighbors().iter().any(|n| open.contains(n)));
    let doors_reachable = fronts.iter().all(|f| open.contains(f));
    if !(approachable && doors_reachable) {
        return None;
    }
    Some(Layout {
        grid,
        agent,
        npcs,
        task: Task::TalkItOut { doors, correct },
    })
}

fn dance<R: Rng + ?Sized>(rng: &mut R) -> Layout {
    let grid = GridWorld::walled(ROOM, ROOM);
    let candidates: Vec<Pos> = grid.interior().collect();
    let cells = distinct_cells(rng, &candidates, 2);
    let pattern = DancePattern::sample(rng);
    let dancer = NpcState::new(
        "Dancer",
        NpcKind::Dancer,
        Pose {
            pos: cells[1],
            dir: random_dir(rng),
        },
        random_color(rng),
        NpcBrain::Dancer { pattern },
    );
    Layout {
        grid,
        agent: Pose {
            pos: cells[0],
            dir: random_dir(rng),
        },
        npcs: vec![dancer],
        task: Task::Dance {
            pattern,
            recorded: Vec::new(),
        },
    }
}

/// Union of the cells seen from the thief's two headings.
pub fn thief_view(grid: &GridWorld, thief: &NpcState) -> BTreeSet<Pos> {
    let mut view = match thief.brain {
        NpcBrain::Thief { facing, .. } => visible_cells(
            &Pose {
                pos: thief.pose.pos,
                dir: facing,
            },
            THIEF_VIEW,
            grid,
        ),
        _ => BTreeSet::new(),
    };
    if let Some(look) = thief.look_around_pose() {
        view.extend(visible_cells(&look, THIEF_VIEW, grid));
    }
    view
}

fn coin_thief<R: Rng + ?Sized>(rng: &mut R, tagged: bool) -> Option<Layout> {
    let mut grid = GridWorld::walled(ROOM, ROOM);
    let interior: Vec<Pos> = grid.interior().collect();
    let agent_pos = *interior.choose(rng)?;
    let thief_cells: Vec<Pos> = agent_pos
        .neighbors()
        .into_iter()
        .filter(|p| interior.contains(p))
        .collect();
    let thief_pos = *thief_cells.choose(rng)?;
    let facing = Orientation::from_delta(agent_pos.x - thief_pos.x, agent_pos.y - thief_pos.y)?;
    let look_around = if rng.gen_bool(0.5) {
        Side::Left
    } else {
        Side::Right
    };
    let thief = NpcState::new(
        "Thief",
        NpcKind::Thief,
        Pose {
            pos: thief_pos,
            dir: facing,
        },
        random_color(rng),
        NpcBrain::Thief {
            facing,
            look_around,
        },
    );
    let free: Vec<Pos> = interior
        .iter()
        .copied()
        .filter(|p| *p != agent_pos && *p != thief_pos)
        .collect();
    let coins = distinct_cells(rng, &free, 6);
    for c in &coins {
        grid.set(*c, Some(Entity::Coin));
    }
    let view = thief_view(&grid, &thief);
    let visible_coins = coins.iter().filter(|c| view.contains(c)).count();
    // answers range over 1..=6, so the thief must see at least one coin
    if visible_coins == 0 {
        return None;
    }
    Some(Layout {
        grid,
        agent: Pose {
            pos: agent_pos,
            dir: random_dir(rng),
        },
        npcs: vec![thief],
        task: Task::CoinThief {
            coins,
            thief_view: view,
            visible_coins,
            tagged,
        },
    })
}

fn diverse_exit<R: Rng + ?Sized>(rng: &mut R) -> Layout {
    let mut grid = GridWorld::walled(ROOM, ROOM);
    let colors = distinct_colors(rng, 4);
    let doors = wall_doors(rng, &mut grid, &colors);
    let correct = rng.gen_range(0..doors.len());
    let npc_type = rng.gen_range(0..NPC_TYPES);
    let fronts: Vec<Pos> = doors.iter().map(|d| d.front).collect();
    let candidates: Vec<Pos> = grid.interior().filter(|p| !fronts.contains(p)).collect();
    let cells = distinct_cells(rng, &candidates, 2);
    let peer = NpcState::new(
        "Guide",
        NpcKind::Peer,
        Pose {
            pos: cells[1],
            dir: random_dir(rng),
        },
        random_color(rng),
        NpcBrain::Peer {
            preference: diverse_exit::preference(npc_type),
            ever_poked: false,
            saved: None,
            correct: doors[correct].color,
        },
    );
    Layout {
        grid,
        agent: Pose {
            pos: cells[0],
            dir: random_dir(rng),
        },
        npcs: vec![peer],
        task: Task::DiverseExit {
            doors,
            correct,
            npc_type,
        },
    }
}

fn show_me<R: Rng + ?Sized>(rng: &mut R) -> Layout {
    let mut grid = GridWorld::walled(ROOM, ROOM);
    let door_x = rng.gen_range(1..ROOM - 1);
    let door = DoorSpot {
        pos: Pos::new(door_x, 0),
        front: Pos::new(door_x, 1),
        color: random_color(rng),
    };
    grid.set(
        door.pos,
        Some(Entity::Door {
            color: door.color,
            state: DoorState::Locked,
        }),
    );
    let xs: Vec<i32> = (1..ROOM - 1).collect();
    let mut switch_xs: Vec<i32> = xs.choose_multiple(rng, 3).copied().collect();
    switch_xs.sort_unstable();
    let colors = distinct_colors(rng, 3);
    let switches: [DoorSpot; 3] = std::array::from_fn(|i| DoorSpot {
        pos: Pos::new(switch_xs[i], ROOM - 1),
        front: Pos::new(switch_xs[i], ROOM - 2),
        color: colors[i],
    });
    for s in &switches {
        grid.set(s.pos, Some(Entity::Switch { color: s.color }));
    }
    let correct = rng.gen_range(0..3);
    let candidates: Vec<Pos> = grid.interior().collect();
    let cells = distinct_cells(rng, &candidates, 2);
    let demonstrator = NpcState::new(
        "Demonstrator",
        NpcKind::Demonstrator,
        Pose {
            pos: cells[1],
            dir: random_dir(rng),
        },
        random_color(rng),
        NpcBrain::Demonstrator {
            phase: DemoPhase::Waiting,
            switch: switches[correct].pos,
            switch_front: switches[correct].front,
            door: door.pos,
            door_front: door.front,
        },
    );
    Layout {
        grid,
        agent: Pose {
            pos: cells[0],
            dir: random_dir(rng),
        },
        npcs: vec![demonstrator],
        task: Task::ShowMe {
            door,
            switches,
            correct,
            activated: None,
            agent_presses: 0,
            npc_exited: false,
        },
    }
}

fn help<R: Rng + ?Sized>(rng: &mut R, role: Role) -> Layout {
    let mut grid = GridWorld::walled(ROOM, ROOM);
    for y in 1..ROOM - 1 {
        grid.set(Pos::new(HELP_LAVA_X, y), Some(Entity::Lava));
    }
    let rows = [rng.gen_range(1..=3), rng.gen_range(4..=6)];
    let colors = distinct_colors(rng, 2);
    let doors: [DoorSpot; 2] = std::array::from_fn(|i| DoorSpot {
        pos: Pos::new(ROOM - 1, rows[i]),
        front: Pos::new(ROOM - 2, rows[i]),
        color: colors[i],
    });
    let switches: [DoorSpot; 2] = std::array::from_fn(|i| DoorSpot {
        pos: Pos::new(0, rows[i]),
        front: Pos::new(1, rows[i]),
        color: colors[i],
    });
    for i in 0..2 {
        grid.set(
            doors[i].pos,
            Some(Entity::Door {
                color: colors[i],
                state: DoorState::Locked,
            }),
        );
        grid.set(switches[i].pos, Some(Entity::Switch { color: colors[i] }));
    }
    let left: Vec<Pos> = grid.interior().filter(|p| p.x < HELP_LAVA_X).collect();
    let right: Vec<Pos> = grid.interior().filter(|p| p.x > HELP_LAVA_X).collect();
    let left_pos = *left.choose(rng).expect("left side has cells");
    let right_pos = *right.choose(rng).expect("right side has cells");
    let color = random_color(rng);
    let (agent_pos, npc) = match role {
        Role::Exiter => (
            right_pos,
            NpcState::new(
                "Helper",
                NpcKind::Helper,
                Pose {
                    pos: left_pos,
                    dir: random_dir(rng),
                },
                color,
                NpcBrain::Helper {
                    phase: HelperPhase::Approach,
                    target: 0,
                    switches: switches.map(|s| s.pos),
                    doors: doors.map(|d| d.pos),
                },
            ),
        ),
        Role::Helper => {
            let door = doors[rng.gen_range(0..2)].pos;
            (
                left_pos,
                NpcState::new(
                    "Exiter",
                    NpcKind::Exiter,
                    Pose {
                        pos: right_pos,
                        dir: random_dir(rng),
                    },
                    color,
                    NpcBrain::Exiter {
                        phase: ExiterPhase::Approach,
                        door,
                    },
                ),
            )
        }
    };
    Layout {
        grid,
        agent: Pose {
            pos: agent_pos,
            dir: random_dir(rng),
        },
        npcs: vec![npc],
        task: Task::Help {
            role,
            doors,
            switches,
            pressed: [false, false],
        },
    }
}
