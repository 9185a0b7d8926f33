//! Ramsey, Paper, Scissors.
//!
//! Each turn the proposer names an unproposed pair whose addition would not
//! complete a copy of `H`, while the decider accepts or rejects without seeing
//! the pair. After the turn both players observe `(pair, decision)`. The game
//! ends when no legal pair remains.

use rand::{Rng, RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{Action, CountingRng, FinalState, GameTranscript, Outcome, Turn};
use crate::error::{Error, Result};
use crate::graph::{canonical, Graph, GrowingGraph};
use crate::random::{check_probability, next_unit, EdgeLabelTable, Stream};
use crate::subgraph::{enumerate_copies, EdgeCompletion};

/// Everything the proposer may inspect.
#[derive(Clone, Debug)]
pub struct RpsState {
    n: usize,
    graph: GrowingGraph,
    proposed: Vec<bool>,
    /// Unproposed pairs not completing a copy with the current graph, sorted.
    legal: Vec<(u32, u32)>,
    turn: usize,
}

impl RpsState {
    fn new(n: usize) -> Self {
        let mut legal = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                legal.push((u, v));
            }
        }
        RpsState {
            n,
            graph: GrowingGraph::new(n),
            proposed: vec![false; n * n],
            legal,
            turn: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &GrowingGraph {
        &self.graph
    }

    pub fn turn(&self) -> usize {
        self.turn
    }

    pub fn legal_pairs(&self) -> &[(u32, u32)] {
        &self.legal
    }

    pub fn was_proposed(&self, u: u32, v: u32) -> bool {
        self.proposed[u as usize * self.n + v as usize]
    }

    fn is_legal(&self, pair: (u32, u32)) -> bool {
        self.legal.binary_search(&pair).is_ok()
    }

    fn apply(&mut self, pair: (u32, u32), accepted: bool, check: &EdgeCompletion) {
        let (u, v) = pair;
        self.proposed[u as usize * self.n + v as usize] = true;
        self.proposed[v as usize * self.n + u as usize] = true;
        if let Ok(i) = self.legal.binary_search(&pair) {
            self.legal.remove(i);
        }
        if accepted {
            self.graph.insert(u, v);
            let graph = &self.graph;
            self.legal.retain(|&(a, b)| !check.completes(graph, a, b));
        }
        self.turn += 1;
    }
}

pub trait ProposerStrategy {
    fn name(&self) -> &str;

    /// A pair from `state.legal_pairs()`, or `None` to signal exhaustion.
    fn propose(&mut self, state: &RpsState, rng: &mut dyn RngCore) -> Option<(u32, u32)>;

    fn observe(&mut self, _pair: (u32, u32), _accepted: bool) {}
}

/// The decider never receives the current proposal.
pub trait DeciderStrategy {
    fn name(&self) -> &str;

    /// Decision for turn `turn` given the decider's own earlier decisions.
    fn decide(&mut self, turn: usize, history: &[bool], rng: &mut dyn RngCore) -> bool;

    fn observe(&mut self, _pair: (u32, u32), _accepted: bool) {}
}

/// Uniform choice among the legal pairs.
#[derive(Clone, Debug, Default)]
pub struct RandomLegalProposer;

impl ProposerStrategy for RandomLegalProposer {
    fn name(&self) -> &str {
        "random-legal"
    }

    fn propose(&mut self, state: &RpsState, rng: &mut dyn RngCore) -> Option<(u32, u32)> {
        let legal = state.legal_pairs();
        (!legal.is_empty()).then(|| legal[rng.random_range(0..legal.len())])
    }
}

/// The legal pair with the smallest larger endpoint, then smallest smaller endpoint.
#[derive(Clone, Debug, Default)]
pub struct DenseFirstProposer;

impl ProposerStrategy for DenseFirstProposer {
    fn name(&self) -> &str {
        "dense-first"
    }

    fn propose(&mut self, state: &RpsState, _rng: &mut dyn RngCore) -> Option<(u32, u32)> {
        state.legal_pairs().iter().copied().min_by_key(|&(u, v)| (v, u))
    }
}

/// Accepts each turn independently with probability `p`.
#[derive(Clone, Debug)]
pub struct RandomDecider {
    p: f64,
}

impl RandomDecider {
    pub fn new(p: f64) -> Result<Self> {
        check_probability(p)?;
        Ok(RandomDecider { p })
    }
}

impl DeciderStrategy for RandomDecider {
    fn name(&self) -> &str {
        "random"
    }

    fn decide(&mut self, _turn: usize, _history: &[bool], rng: &mut dyn RngCore) -> bool {
        next_unit(rng) < self.p
    }
}

#[derive(Clone, Debug, Default)]
pub struct AlwaysReject;

impl DeciderStrategy for AlwaysReject {
    fn name(&self) -> &str {
        "always-reject"
    }

    fn decide(&mut self, _turn: usize, _history: &[bool], _rng: &mut dyn RngCore) -> bool {
        false
    }
}

pub fn proposer_by_name(name: &str) -> Result<Box<dyn ProposerStrategy + Send>> {
    match name {
        "random-legal" => Ok(Box::new(RandomLegalProposer)),
        "dense-first" => Ok(Box::new(DenseFirstProposer)),
        other => Err(Error::InvalidParameter(format!("unknown proposer `{other}`"))),
    }
}

pub fn decider_by_name(name: &str, p: f64) -> Result<Box<dyn DeciderStrategy + Send>> {
    match name {
        "random" => Ok(Box::new(RandomDecider::new(p)?)),
        "always-reject" => Ok(Box::new(AlwaysReject)),
        other => Err(Error::InvalidParameter(format!("unknown decider `{other}`"))),
    }
}

/// Shared engine; `decide` sees the pair only so the coupling harness can use labels.
fn play(
    n: usize,
    h: &Graph,
    proposer: &mut dyn ProposerStrategy,
    decider_name: &str,
    rng: &mut Stream,
    mut decide: impl FnMut(usize, (u32, u32), &[bool], &mut dyn RngCore) -> bool,
    mut observe: impl FnMut((u32, u32), bool),
) -> Result<GameTranscript> {
    if h.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    let check = EdgeCompletion::new(h);
    let mut proposer_rng = CountingRng::new(Stream::seed_from_u64(rng.next_u64()));
    let mut decider_rng = CountingRng::new(Stream::seed_from_u64(rng.next_u64()));
    let mut state = RpsState::new(n);
    state.legal.retain(|&(a, b)| !check.completes(&GrowingGraph::new(n), a, b));
    let mut history = Vec::new();
    let mut turns = Vec::new();
    while !state.legal.is_empty() {
        let before = proposer_rng.draws() + decider_rng.draws();
        let turn = state.turn;
        let pair = proposer.propose(&state, &mut proposer_rng).ok_or_else(|| Error::RuleViolation {
            turn,
            reason: format!("{} signalled exhaustion while legal pairs remain", proposer.name()),
        })?;
        let pair = canonical(pair.0, pair.1);
        if !state.is_legal(pair) {
            return Err(Error::RuleViolation {
                turn,
                reason: format!("{} proposed illegal pair {pair:?}", proposer.name()),
            });
        }
        let accepted = decide(turn, pair, &history, &mut decider_rng);
        history.push(accepted);
        state.apply(pair, accepted, &check);
        proposer.observe(pair, accepted);
        observe(pair, accepted);
        turns.push(Turn {
            pair,
            action: if accepted { Action::Accept } else { Action::Reject },
            draws: proposer_rng.draws() + decider_rng.draws() - before,
        });
    }
    Ok(GameTranscript {
        players: (proposer.name().to_string(), decider_name.to_string()),
        turns,
        outcome: Outcome::Exhausted,
        final_state: FinalState::Rps {
            graph: state.graph.to_graph(),
        },
    })
}

/// Plays one game on `n` vertices to exhaustion.
pub fn run_rps(
    n: usize,
    h: &Graph,
    proposer: &mut dyn ProposerStrategy,
    decider: &mut dyn DeciderStrategy,
    rng: &mut Stream,
) -> Result<GameTranscript> {
    let name = decider.name().to_string();
    let decider = std::cell::RefCell::new(decider);
    play(
        n,
        h,
        proposer,
        &name,
        rng,
        |turn, _pair, history, rng| decider.borrow_mut().decide(turn, history, rng),
        |pair, accepted| decider.borrow_mut().observe(pair, accepted),
    )
}

/// Checks a transcript against the rules and its recorded final graph.
pub fn replay_rps(n: usize, h: &Graph, transcript: &GameTranscript) -> Result<()> {
    let FinalState::Rps { graph } = &transcript.final_state else {
        return Err(Error::InvalidParameter("not an RPS transcript".into()));
    };
    let check = EdgeCompletion::new(h);
    let mut state = RpsState::new(n);
    state.legal.retain(|&(a, b)| !check.completes(&GrowingGraph::new(n), a, b));
    for (turn, t) in transcript.turns.iter().enumerate() {
        if !state.is_legal(t.pair) {
            return Err(Error::RuleViolation {
                turn,
                reason: format!("pair {:?} was not legal", t.pair),
            });
        }
        state.apply(t.pair, t.action == Action::Accept, &check);
    }
    if !state.legal.is_empty() {
        return Err(Error::RuleViolation {
            turn: state.turn,
            reason: "game ended while legal pairs remain".into(),
        });
    }
    if &state.graph.to_graph() != graph {
        return Err(Error::RuleViolation {
            turn: state.turn,
            reason: "final graph differs from the replay".into(),
        });
    }
    Ok(())
}

/// Result of playing against the label-threshold decider next to `G(n, p)`
/// drawn from the same labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingReport {
    pub gnp: Graph,
    pub game: Graph,
    /// Every accepted edge is an edge of `gnp`.
    pub property_a: bool,
    /// Every edge of `gnp` missing from the game graph lies in a copy inside `gnp`.
    pub property_b: bool,
    /// A covering copy (host vertices) for each edge of `gnp` missing from the game graph.
    pub witnesses: Vec<((u32, u32), Vec<u32>)>,
    pub violations: Vec<(u32, u32)>,
    pub transcript: GameTranscript,
}

/// Plays with the decider `accept e iff label(e) < p`.
pub fn coupled_rps_check(
    n: usize,
    h: &Graph,
    proposer: &mut dyn ProposerStrategy,
    p: f64,
    labels: &EdgeLabelTable,
    rng: &mut Stream,
) -> Result<CouplingReport> {
    check_probability(p)?;
    if labels.n() != n {
        return Err(Error::InvalidParameter(format!(
            "label table covers {} vertices, game has {n}",
            labels.n()
        )));
    }
    let transcript = play(
        n,
        h,
        proposer,
        "label-threshold",
        rng,
        |_, (u, v), _, _| labels.label(u, v) < p,
        |_, _| {},
    )?;
    let FinalState::Rps { graph: game } = &transcript.final_state else {
        unreachable!("play returns an RPS state");
    };
    let game = game.clone();
    let gnp = labels.threshold(p)?;
    let property_a = game.is_edge_subset_of(&gnp);
    let index = enumerate_copies(&gnp, h)?;
    let mut witnesses = Vec::new();
    let mut violations = Vec::new();
    for (id, &(u, v)) in gnp.edges().iter().enumerate() {
        if game.edge_id(u, v).is_some() {
            continue;
        }
        match index.coverage(id).first() {
            Some(&c) => witnesses.push(((u, v), index.copies()[c as usize].vertices.clone())),
            None => violations.push((u, v)),
        }
    }
    Ok(CouplingReport {
        gnp,
        game,
        property_a,
        property_b: violations.is_empty(),
        witnesses,
        violations,
        transcript,
    })
}
