use alteration_lab::games::rps::{replay_rps, AlwaysReject, RandomDecider};
use alteration_lab::games::{
    run_rps, Action, DeciderStrategy, DenseFirstProposer, GameTranscript, ProposerStrategy, RandomLegalProposer,
    RpsState,
};
use alteration_lab::graph::Graph;
use alteration_lab::random::RandomSource;
use alteration_lab::Error;
use rand::RngCore;

fn decisions(t: &GameTranscript) -> Vec<bool> {
    t.turns.iter().map(|turn| turn.action == Action::Accept).collect()
}

#[test]
fn decider_ignores_the_proposals() {
    let k3 = Graph::complete(3);
    for seed in 0..40 {
        let source = RandomSource::new(seed);
        let a = run_rps(
            15,
            &k3,
            &mut RandomLegalProposer,
            &mut RandomDecider::new(0.5).unwrap(),
            &mut source.stream("blind", 0),
        )
        .unwrap();
        let b = run_rps(
            15,
            &k3,
            &mut DenseFirstProposer,
            &mut RandomDecider::new(0.5).unwrap(),
            &mut source.stream("blind", 0),
        )
        .unwrap();
        let (da, db) = (decisions(&a), decisions(&b));
        let common = da.len().min(db.len());
        assert!(common > 0);
        assert_eq!(da[..common], db[..common]);
    }
}

#[test]
fn always_reject_ends_with_every_pair_proposed_once() {
    let t = run_rps(
        9,
        &Graph::complete(3),
        &mut DenseFirstProposer,
        &mut AlwaysReject,
        &mut RandomSource::new(1).stream("reject", 0),
    )
    .unwrap();
    assert_eq!(t.turns.len(), 36);
    let mut pairs: Vec<(u32, u32)> = t.turns.iter().map(|x| x.pair).collect();
    pairs.sort_unstable();
    pairs.dedup();
    assert_eq!(pairs.len(), 36);
}

struct Cheater;

impl ProposerStrategy for Cheater {
    fn name(&self) -> &str {
        "cheater"
    }

    fn propose(&mut self, _state: &RpsState, _rng: &mut dyn RngCore) -> Option<(u32, u32)> {
        Some((0, 1))
    }
}

#[test]
fn repeated_proposals_are_rule_violations() {
    let out = run_rps(
        5,
        &Graph::complete(3),
        &mut Cheater,
        &mut AlwaysReject,
        &mut RandomSource::new(1).stream("cheat", 0),
    );
    assert!(matches!(out, Err(Error::RuleViolation { turn: 1, .. })));
}

#[test]
fn tampered_transcripts_fail_replay() {
    let h = Graph::complete(3);
    let mut t = run_rps(
        8,
        &h,
        &mut RandomLegalProposer,
        &mut RandomDecider::new(0.6).unwrap(),
        &mut RandomSource::new(2).stream("tamper", 0),
    )
    .unwrap();
    replay_rps(8, &h, &t).unwrap();
    let flip = t.turns.iter().position(|x| x.action == Action::Reject).unwrap();
    t.turns[flip].action = Action::Accept;
    assert!(replay_rps(8, &h, &t).is_err());
}

#[test]
fn custom_deciders_plug_in() {
    struct Alternate;
    impl DeciderStrategy for Alternate {
        fn name(&self) -> &str {
            "alternate"
        }
        fn decide(&mut self, turn: usize, _history: &[bool], _rng: &mut dyn RngCore) -> bool {
            turn.is_multiple_of(2)
        }
    }
    let h = Graph::cycle(4).unwrap();
    let t = run_rps(7, &h, &mut RandomLegalProposer, &mut Alternate, &mut RandomSource::new(3).stream("alt", 0)).unwrap();
    assert!(decisions(&t).iter().enumerate().all(|(i, &d)| d == (i % 2 == 0)));
    replay_rps(7, &h, &t).unwrap();
}
