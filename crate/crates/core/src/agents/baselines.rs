//! Observation-only baselines.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::ego::EgoMap;
use super::steer::{heading, turn_toward};
use super::{phrase, Policy, PolicyId, PolicyInput};
use crate::env::{EnvId, EnvSpec};
use crate::grammar::{Action, Phrase};
use crate::grid::{Pos, Primitive};
use crate::observation::Observation;

fn observed<'a>(input: PolicyInput<'a>) -> &'a Observation {
    match input {
        PolicyInput::Observed(obs) => obs,
        PolicyInput::Privileged(_) => panic!("baselines only read observations"),
    }
}

/// Uniform over the allowed primitives, speaking a uniform phrase half the time.
pub struct UniformRandom {
    spec: EnvSpec,
}

impl UniformRandom {
    pub fn new(spec: EnvSpec) -> Self {
        UniformRandom { spec }
    }
}

impl Policy for UniformRandom {
    fn id(&self) -> PolicyId {
        PolicyId::UniformRandom
    }

    fn act(&mut self, input: PolicyInput<'_>, rng: &mut ChaCha8Rng) -> Action {
        let _ = observed(input);
        let g = self.spec.grammar();
        let primitive = self.spec.allowed_primitives().choose(rng).copied();
        let utterance = rng.gen_bool(0.5).then(|| {
            Phrase::new(
                rng.gen_range(0..g.n_templates()) as u8,
                rng.gen_range(0..g.n_nouns()) as u8,
            )
        });
        Action {
            primitive,
            utterance,
        }
    }
}

/// Answers the thief at once with a uniformly drawn count.
pub struct UniformCoinAnswer {
    spec: EnvSpec,
}

impl UniformCoinAnswer {
    pub fn new(spec: EnvSpec) -> Self {
        UniformCoinAnswer { spec }
    }
}

impl Policy for UniformCoinAnswer {
    fn id(&self) -> PolicyId {
        PolicyId::UniformCoinAnswer
    }

    fn act(&mut self, input: PolicyInput<'_>, rng: &mut ChaCha8Rng) -> Action {
        let _ = observed(input);
        let n: u32 = rng.gen_range(1..=6);
        Action::say(phrase(self.spec, &format!("Here is {n}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plan {
    Scan(u8),
    Wander(u8),
    Door(Pos),
}

/// Ignores every NPC: looks around, picks one of the doors it has seen
/// uniformly at random, walks there and performs the exit gesture.
pub struct RandomDoor {
    spec: EnvSpec,
    map: EgoMap,
    last: Option<Primitive>,
    plan: Plan,
    scans: u32,
}

/// Full turns after which the policy settles for the doors seen so far.
const PATIENCE: u32 = 2;

impl RandomDoor {
    pub fn new(spec: EnvSpec) -> Self {
        RandomDoor {
            spec,
            map: EgoMap::new(),
            last: None,
            plan: Plan::Scan(4),
            scans: 0,
        }
    }

    fn gesture(&self) -> Action {
        match self.spec.id {
            EnvId::DiverseExit => Action::go(Primitive::Toggle),
            _ => Action::say(phrase(self.spec, "Open sesame")),
        }
    }

    fn decide(&mut self, rng: &mut ChaCha8Rng) {
        self.scans += 1;
        let doors: Vec<Pos> = self
            .map
            .doors()
            .into_iter()
            .filter(|d| self.map.door_front(*d).is_some())
            .collect();
        self.plan = match doors.choose(rng) {
            Some(d) if doors.len() >= 4 || self.scans >= PATIENCE => Plan::Door(*d),
            _ => Plan::Wander(3),
        };
    }

    fn next(&mut self, rng: &mut ChaCha8Rng) -> Action {
        for _ in 0..3 {
            match self.plan {
                Plan::Scan(0) => self.decide(rng),
                Plan::Scan(n) => {
                    self.plan = Plan::Scan(n - 1);
                    return Action::go(Primitive::TurnRight);
                }
                Plan::Wander(0) => self.plan = Plan::Scan(4),
                Plan::Wander(n) => {
                    self.plan = Plan::Wander(n - 1);
                    return Action::go(wander_step(&self.map, rng));
                }
                Plan::Door(d) => {
                    let front = self.map.door_front(d);
                    let step = front.and_then(|f| Some((f, heading(f, d)?)));
                    match step {
                        Some((f, dir)) if self.map.pose.pos == f && self.map.pose.dir == dir => {
                            return self.gesture()
                        }
                        Some((f, dir)) => match self.map.route(f, dir) {
                            Some(p) => return Action::go(p),
                            None => self.plan = Plan::Wander(2),
                        },
                        None => self.plan = Plan::Wander(2),
                    }
                }
            }
        }
        Action::go(Primitive::TurnRight)
    }
}

fn wander_step(map: &EgoMap, rng: &mut ChaCha8Rng) -> Primitive {
    if map.walkable(map.pose.front()) {
        Primitive::Forward
    } else if rng.gen_bool(0.5) {
        Primitive::TurnLeft
    } else {
        Primitive::TurnRight
    }
}

impl Policy for RandomDoor {
    fn id(&self) -> PolicyId {
        PolicyId::RandomDoor
    }

    fn act(&mut self, input: PolicyInput<'_>, rng: &mut ChaCha8Rng) -> Action {
        let obs = observed(input);
        self.map.advance(self.last);
        self.map.observe(obs);
        let action = self.next(rng);
        self.last = action.primitive;
        action
    }
}

/// Probability of replacing the scripted move with a random gesture.
pub const EXITER_EPSILON: f64 = 0.1;

/// Behaves as an agent trained for the exiter role would: head for a door,
/// wait in front of it looking back into the room, and go through as soon as
/// it opens. Each step is replaced by a random gesture with probability
/// [`EXITER_EPSILON`].
pub struct ExiterAsHelper {
    map: EgoMap,
    last: Option<Primitive>,
    waited: u32,
}

const RANDOM_GESTURES: [Primitive; 4] = [
    Primitive::TurnLeft,
    Primitive::TurnRight,
    Primitive::Forward,
    Primitive::Toggle,
];

impl ExiterAsHelper {
    pub fn new(_spec: EnvSpec) -> Self {
        ExiterAsHelper {
            map: EgoMap::new(),
            last: None,
            waited: 0,
        }
    }

    /// Scripted exiter move; `None` means wait.
    fn scripted(&mut self, rng: &mut ChaCha8Rng) -> Option<Primitive> {
        let map = &self.map;
        let doors = map.doors();
        let open = doors
            .iter()
            .filter(|d| map.door_is_open(**d))
            .find_map(|d| map.door_front(*d).and_then(|f| Some((f, heading(f, *d)?))));
        if let Some((f, dir)) = open {
            return Some(map.route(f, dir).unwrap_or(Primitive::Forward));
        }
        let post = doors.iter().find_map(|d| {
            map.door_front(*d)
                .filter(|f| map.can_reach(*f))
                .and_then(|f| Some((f, heading(f, *d)?)))
        });
        let Some((f, to_door)) = post else {
            self.waited = 0;
            return Some(wander_step(map, rng));
        };
        if map.pose.pos != f {
            self.waited = 0;
            return Some(
                map.route(f, to_door.reverse())
                    .unwrap_or(Primitive::TurnRight),
            );
        }
        // look back into the room for the partner, glancing at the door now and then
        self.waited += 1;
        let target = if self.waited % 6 < 3 {
            to_door.reverse()
        } else {
            to_door
        };
        (map.pose.dir != target).then(|| turn_toward(map.pose.dir, target))
    }
}

impl Policy for ExiterAsHelper {
    fn id(&self) -> PolicyId {
        PolicyId::ExiterAsHelper
    }

    fn act(&mut self, input: PolicyInput<'_>, rng: &mut ChaCha8Rng) -> Action {
        let obs = observed(input);
        self.map.advance(self.last);
        self.map.observe(obs);
        let primitive = if rng.gen_bool(EXITER_EPSILON) {
            RANDOM_GESTURES.choose(rng).copied()
        } else {
            self.scripted(rng)
        };
        self.last = primitive;
        Action {
            primitive,
            utterance: None,
        }
    }
}
