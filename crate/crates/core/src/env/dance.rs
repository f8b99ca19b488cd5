//! Dance pattern sampling and the sliding-window imitation check.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::grammar::{Phrase, DANCE_GRAMMAR};
use crate::grid::Primitive;

pub const PATTERN_LEN: usize = 3;

/// NPC steps before recording starts: greeting, three moves, the cue.
pub const DEMO_STEPS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DanceStep {
    pub primitive: Primitive,
    pub utterance: Option<Phrase>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DancePattern {
    pub steps: [DanceStep; PATTERN_LEN],
}

impl DancePattern {
    /// Each move is uniform over the three movement primitives; half of the
    /// moves carry a uniformly drawn dance phrase.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut draw = || {
            let primitive = Primitive::MOVEMENT[rng.gen_range(0..Primitive::MOVEMENT.len())];
            let utterance = rng.gen_bool(0.5).then(|| {
                Phrase::new(
                    rng.gen_range(0..DANCE_GRAMMAR.n_templates()) as u8,
                    rng.gen_range(0..DANCE_GRAMMAR.n_nouns()) as u8,
                )
            });
            DanceStep {
                primitive,
                utterance,
            }
        };
        DancePattern {
            steps: [draw(), draw(), draw()],
        }
    }

    /// The pattern as the agent must reproduce it.
    pub fn as_recorded(&self) -> [RecordedStep; PATTERN_LEN] {
        self.steps.map(|s| RecordedStep {
            primitive: Some(s.primitive),
            utterance: s
                .utterance
                .map(|p| DANCE_GRAMMAR.render(p).expect("dance phrase renders")),
        })
    }
}

/// One agent step as logged once the demonstration has finished.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordedStep {
    pub primitive: Option<Primitive>,
    pub utterance: Option<String>,
}

/// True iff some contiguous window of the recording equals the pattern,
/// primitive and utterance (or silence) alike.
pub fn match_dance(recorded: &[RecordedStep], pattern: &DancePattern) -> bool {
    let want = pattern.as_recorded();
    recorded.windows(PATTERN_LEN).any(|w| w == want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pattern() -> DancePattern {
        DancePattern {
            steps: [
                DanceStep {
                    primitive: Primitive::TurnLeft,
                    utterance: Some(Phrase::new(0, 0)),
                },
                DanceStep {
                    primitive: Primitive::Forward,
                    utterance: None,
                },
                DanceStep {
                    primitive: Primitive::TurnRight,
                    utterance: Some(Phrase::new(1, 1)),
                },
            ],
        }
    }

    fn rec(p: Option<Primitive>, u: Option<&str>) -> RecordedStep {
        RecordedStep {
            primitive: p,
            utterance: u.map(str::to_string),
        }
    }

    #[test]
    fn exact_reproduction() {
        let p = pattern();
        assert!(match_dance(&p.as_recorded(), &p));
    }

    #[test]
    fn sliding_window_after_junk() {
        let p = pattern();
        let mut r = vec![rec(None, Some("Move your head"))];
        r.extend(p.as_recorded());
        assert!(match_dance(&r, &p));
    }

    #[test]
    fn missing_utterance_fails() {
        let p = pattern();
        let mut r = p.as_recorded().to_vec();
        r[2].utterance = None;
        assert!(!match_dance(&r, &p));
        // and an extra utterance on a silent step fails too
        let mut r = p.as_recorded().to_vec();
        r[1].utterance = Some("Move your body".into());
        assert!(!match_dance(&r, &p));
    }

    #[test]
    fn short_recordings_never_match() {
        let p = pattern();
        assert!(!match_dance(&p.as_recorded()[..2], &p));
        assert!(!match_dance(&[], &p));
    }

    #[test]
    fn sampled_patterns_use_movement_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut with_utt = 0;
        for _ in 0..2000 {
            let p = DancePattern::sample(&mut rng);
            for s in p.steps {
                assert!(Primitive::MOVEMENT.contains(&s.primitive));
                with_utt += s.utterance.is_some() as u32;
            }
        }
        let frac = with_utt as f64 / 6000.0;
        assert!((frac - 0.5).abs() < 0.03, "utterance fraction {frac}");
    }
}
