use socialai_core::agents::PolicyId;
use socialai_core::env::{reset, EnvId, EnvSpec, Role};
use socialai_core::harness::{
    evaluate, play, render_ascii, replay, role_transfer_eval, run_episode, Verdict,
};
use socialai_core::shaping::{BonusKind, BonusParams, WrapperConfig};
use socialai_core::RawAction;

fn recorded(id: EnvId, policy: PolicyId, seed: u64) -> socialai_core::harness::EpisodeTrace {
    run_episode(EnvSpec::new(id), policy, seed, WrapperConfig::default())
        .unwrap()
        .trace
}

#[test]
fn self_recorded_traces_replay() {
    for id in EnvId::ALL {
        let trace = recorded(id, PolicyId::UniformRandom, 9);
        assert!(replay(&trace).is_identical(), "{id:?}");
        let back: socialai_core::harness::EpisodeTrace =
            serde_json::from_str(&trace.to_json()).unwrap();
        assert_eq!(back, trace);
    }
}

#[test]
fn flipped_action_diverges_at_that_step() {
    let mut trace = recorded(EnvId::TalkItOut, PolicyId::Oracle, 4);
    assert!(trace.steps.len() > 5);
    // turning the other way changes the view on the very next observation
    let k = trace
        .steps
        .iter()
        .position(|s| s.action.0[0] == Some(1) || s.action.0[0] == Some(2))
        .unwrap();
    trace.steps[k].action = RawAction([
        Some(if trace.steps[k].action.0[0] == Some(1) {
            2
        } else {
            1
        }),
        None,
        None,
    ]);
    match replay(&trace) {
        Verdict::Diverged { step, .. } => assert_eq!(step, k + 1),
        v => panic!("{v:?}"),
    }
}

#[test]
fn foreign_engine_versions_are_refused() {
    let mut trace = recorded(EnvId::Dance, PolicyId::Oracle, 1);
    trace.header.engine_version = "socialai-core 0.0.0-other".into();
    assert!(matches!(replay(&trace), Verdict::Refused { .. }));
}

#[test]
fn wrapped_traces_replay_too() {
    let config = WrapperConfig {
        explo: Some(BonusParams::with_kind(EnvId::TalkItOut, BonusKind::Lang)),
        weight: 0.5,
        unsocial: false,
    };
    let trace = run_episode(EnvSpec::new(EnvId::TalkItOut), PolicyId::Oracle, 2, config)
        .unwrap()
        .trace;
    assert!(replay(&trace).is_identical());
    // bonus rewards are arbitrary doubles; they must survive the file format
    let back: socialai_core::harness::EpisodeTrace =
        serde_json::from_str(&trace.to_json()).unwrap();
    assert!(replay(&back).is_identical());
}

#[test]
fn reports_do_not_depend_on_scheduling() {
    let spec = EnvSpec::new(EnvId::DiverseExit);
    let a = evaluate(
        spec,
        PolicyId::RandomDoor,
        64,
        100,
        WrapperConfig::default(),
    )
    .unwrap();
    let b = evaluate(
        spec,
        PolicyId::RandomDoor,
        64,
        100,
        WrapperConfig::default(),
    )
    .unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(a.successes as f64 / a.n_episodes as f64, a.success_rate);
    assert!(evaluate(spec, PolicyId::Oracle, 0, 0, WrapperConfig::default()).is_err());
    assert!(evaluate(
        spec,
        PolicyId::UniformCoinAnswer,
        1,
        0,
        WrapperConfig::default()
    )
    .is_err());
}

#[test]
fn uniform_random_rarely_dances() {
    let r = evaluate(
        EnvSpec::new(EnvId::Dance),
        PolicyId::UniformRandom,
        500,
        0,
        WrapperConfig::default(),
    )
    .unwrap();
    assert!(r.success_rate <= 0.05, "{}", r.success_rate);
}

#[test]
fn oracle_solves_both_help_roles() {
    let r = role_transfer_eval(PolicyId::Oracle, 100, 0).unwrap();
    assert_eq!((r.exiter_rate, r.helper_rate), (1.0, 1.0));
}

#[test]
fn talk_it_out_render() {
    let (s, _) = reset(EnvSpec::new(EnvId::TalkItOut), 7).unwrap();
    let text = render_ascii(&s);
    let rows: Vec<&str> = text
        .lines()
        .take_while(|l| !l.starts_with("legend"))
        .collect();
    assert_eq!(rows.len(), s.grid.height() as usize);
    let map = rows.concat();
    for glyph in ['W', 'G', 'D', '@', '#'] {
        assert!(map.contains(glyph), "missing {glyph} in\n{text}");
    }
    assert_eq!(map.matches('G').count(), 2);
    assert_eq!(map.matches('D').count(), 4);
}

#[test]
fn play_echoes_speech_and_quits_with_a_trace() {
    let mut out = Vec::new();
    let trace = play(
        EnvSpec::new(EnvId::TalkItOut),
        7,
        "say 1 5\njump\nf\nq\n".as_bytes(),
        &mut out,
    )
    .unwrap();
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("you say: Open the window"));
    assert!(text.contains("commands:"), "unknown tokens print help");
    assert!(text.trim_end().ends_with("bye"));
    assert_eq!(trace.steps.len(), 2);
    assert!(replay(&trace).is_identical());
}

#[test]
fn help_roles_are_recorded() {
    let run = run_episode(
        EnvSpec::with_role(EnvId::Help, Role::Helper),
        PolicyId::Oracle,
        3,
        WrapperConfig::default(),
    )
    .unwrap();
    assert_eq!(run.trace.header.role, Role::Helper);
    assert!(replay(&run.trace).is_identical());
}
