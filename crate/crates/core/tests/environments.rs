use std::collections::BTreeSet;

use socialai_core::agents::PolicyId;
use socialai_core::env::{reset, step, EnvId, EnvSpec, Outcome, Role, Task, WorldState};
use socialai_core::grid::{Entity, Orientation, Pos, Pose, Primitive};
use socialai_core::harness::run_episode;
use socialai_core::npc::{NpcBrain, NpcKind, Side};
use socialai_core::shaping::WrapperConfig;
use socialai_core::{Action, Phrase, RawAction};

fn go(p: Primitive) -> RawAction {
    Action::go(p).to_raw()
}

#[test]
fn toggle_ends_talk_it_out_without_reward() {
    let (mut s, _) = reset(EnvSpec::new(EnvId::TalkItOut), 3).unwrap();
    let r = step(&mut s, go(Primitive::Toggle)).unwrap();
    assert!(r.done);
    assert_eq!(r.reward, 0.0);
    assert_eq!(s.outcome(), Some(Outcome::Failure));
}

#[test]
fn resets_are_reproducible() {
    for id in EnvId::ALL {
        let a = reset(EnvSpec::new(id), 42).unwrap();
        let b = reset(EnvSpec::new(id), 42).unwrap();
        assert_eq!(
            serde_json::to_string(&a.0.task).unwrap(),
            serde_json::to_string(&b.0.task).unwrap()
        );
        assert_eq!((a.0.agent, &a.0.npcs), (b.0.agent, &b.0.npcs));
        assert_eq!(a.1, b.1);
    }
}

#[test]
fn initial_observation_is_silent() {
    let (_, obs) = reset(EnvSpec::new(EnvId::TalkItOut), 7).unwrap();
    assert_eq!(obs.utterance, "<empty>");
    assert_eq!(obs.grid.len(), 7);
    assert!(obs.grid.iter().all(|row| row.len() == 7));
}

#[test]
fn talk_it_out_layouts() {
    for seed in 0..200 {
        let (s, _) = reset(EnvSpec::new(EnvId::TalkItOut), seed).unwrap();
        let Task::TalkItOut { doors, .. } = &s.task else {
            panic!()
        };
        assert_eq!(doors.len(), 4);
        let colors: BTreeSet<_> = doors.iter().map(|d| d.color).collect();
        assert_eq!(colors.len(), 4, "seed {seed}");
        let kinds: Vec<_> = s.npcs.iter().map(|n| n.kind).collect();
        assert_eq!(kinds, [NpcKind::Wizard, NpcKind::Guide, NpcKind::Guide]);
        for n in &s.npcs {
            assert!(
                doors.iter().all(|d| d.front != n.pose.pos),
                "seed {seed}: NPC on a door front"
            );
        }
        let (nl, _) = reset(EnvSpec::new(EnvId::TalkItOutNoLiar), seed).unwrap();
        assert_eq!(nl.npcs.len(), 2);
    }
}

#[test]
fn help_rooms_are_split_by_lava() {
    for seed in 0..100 {
        for role in [Role::Exiter, Role::Helper] {
            let (s, _) = reset(EnvSpec::with_role(EnvId::Help, role), seed).unwrap();
            let lava: Vec<i32> = s
                .grid
                .positions()
                .filter(|p| matches!(s.grid.get(*p), Some(Entity::Lava)))
                .map(|p| p.x)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            assert_eq!(lava.len(), 1);
            let (ax, nx) = (s.agent.pos.x, s.npcs[0].pose.pos.x);
            match role {
                Role::Exiter => assert!(ax > lava[0] && nx < lava[0]),
                Role::Helper => assert!(ax < lava[0] && nx > lava[0]),
            }
        }
    }
}

/// Cell-by-cell scan of a 5×5 footprint clipped to the room interior. The
/// room is open apart from its outer ring, so nothing inside is occluded.
fn footprint(pose: Pose, room: i32) -> BTreeSet<Pos> {
    let mut out = BTreeSet::new();
    for f in 0..5 {
        for l in -2..=2 {
            let p = pose.relative(f, l);
            if (1..room - 1).contains(&p.x) && (1..room - 1).contains(&p.y) {
                out.insert(p);
            }
        }
    }
    out
}

fn brute_force_visible(s: &WorldState) -> usize {
    let thief = &s.npcs[0];
    let NpcBrain::Thief {
        facing,
        look_around,
    } = thief.brain
    else {
        panic!()
    };
    let aside = match look_around {
        Side::Left => facing.left(),
        Side::Right => facing.right(),
    };
    let room = s.grid.width();
    let mut seen = footprint(
        Pose {
            pos: thief.pose.pos,
            dir: facing,
        },
        room,
    );
    seen.extend(footprint(
        Pose {
            pos: thief.pose.pos,
            dir: aside,
        },
        room,
    ));
    seen.iter()
        .filter(|p| matches!(s.grid.get(**p), Some(Entity::Coin)))
        .count()
}

#[test]
fn thief_count_matches_independent_scan() {
    for seed in 0..500 {
        let (s, _) = reset(EnvSpec::new(EnvId::CoinThief), seed).unwrap();
        let Task::CoinThief {
            visible_coins,
            coins,
            ..
        } = &s.task
        else {
            panic!()
        };
        assert_eq!(coins.len(), 6);
        assert_eq!(*visible_coins, brute_force_visible(&s), "seed {seed}");
        assert!((1..=6).contains(visible_coins));
    }
}

#[test]
fn answering_the_visible_count_wins() {
    let (mut s, _) = reset(EnvSpec::new(EnvId::CoinThief), 11).unwrap();
    let Task::CoinThief { visible_coins, .. } = s.task.clone() else {
        panic!()
    };
    let r = step(
        &mut s,
        Action::say(Phrase::new(0, visible_coins as u8 - 1)).to_raw(),
    )
    .unwrap();
    assert!(r.done);
    assert_eq!(s.outcome(), Some(Outcome::Success));
    assert!((r.reward - 0.955).abs() < 1e-12);
}

#[test]
fn move_in_coin_thief_fails() {
    let (mut s, _) = reset(EnvSpec::new(EnvId::CoinThief), 5).unwrap();
    let r = step(&mut s, go(Primitive::Forward)).unwrap();
    assert!(r.done && r.reward == 0.0);
}

#[test]
fn dance_npc_calls_out_across_the_room() {
    let (_, obs) = reset(EnvSpec::new(EnvId::Dance), 0).unwrap();
    assert_eq!(obs.utterance, "Dancer: Look at me!");
}

#[test]
fn oracle_talk_it_out_dialogue() {
    for seed in 0..20 {
        let run = run_episode(
            EnvSpec::new(EnvId::TalkItOut),
            PolicyId::Oracle,
            seed,
            WrapperConfig::default(),
        )
        .unwrap();
        assert_eq!(run.outcome, Outcome::Success);
        let heard: Vec<&str> = run
            .trace
            .steps
            .iter()
            .map(|s| s.utterance.as_str())
            .filter(|u| *u != "<empty>")
            .collect();
        assert!(
            heard
                .iter()
                .any(|u| u.contains("Wizard: Ask Jack.") || u.contains("Wizard: Ask John.")),
            "{heard:?}"
        );
        assert!(
            heard
                .iter()
                .any(|u| u.contains(": Go to the ") && u.contains(" door.")),
            "{heard:?}"
        );
        let expected = 1.0 - 0.9 * f64::from(run.length) / 100.0;
        assert!((run.total_reward - expected).abs() < 1e-12);
    }
}

#[test]
fn asking_a_diverse_exit_npc_wrongly_is_final() {
    // type 2 wants to be asked from a distance; asking from next to it
    // latches the wrong configuration for good
    let spec = EnvSpec::new(EnvId::DiverseExit);
    let seed = (0..5000)
        .find(|s| {
            let (st, _) = reset(spec, *s).unwrap();
            matches!(st.task, Task::DiverseExit { npc_type: 2, .. })
        })
        .unwrap();
    let (mut s, _) = reset(spec, seed).unwrap();
    let npc = s.npcs[0].pose.pos;
    let spot = npc
        .neighbors()
        .into_iter()
        .find(|p| s.is_free(*p))
        .expect("room around the NPC");
    s.agent = Pose {
        pos: spot,
        dir: Orientation::from_delta(npc.x - spot.x, npc.y - spot.y).unwrap(),
    };
    let ask = spec.grammar().parse("Where is the exit").unwrap();
    for _ in 0..3 {
        let r = step(&mut s, Action::say(ask).to_raw()).unwrap();
        assert!(!r.obs.history.contains("Go to the"));
    }
    for _ in 0..30 {
        let r = step(&mut s, Action::say(ask).to_raw()).unwrap();
        assert!(!r.obs.history.contains("Go to the"));
        if r.done {
            break;
        }
    }
}

#[test]
fn blocked_forward_still_advances_time() {
    let spec = EnvSpec::new(EnvId::TalkItOut);
    let (mut s, _) = (0..)
        .map(|seed| reset(spec, seed).unwrap())
        .find(|(s, _)| matches!(s.grid.get(s.agent.front()), Some(Entity::Wall)))
        .unwrap();
    let before = s.agent;
    let r = step(&mut s, go(Primitive::Forward)).unwrap();
    assert_eq!(s.agent, before);
    assert_eq!(r.info.t, 1);
    assert!(!r.done);
}
