//! Builder/Painter online Ramsey game on a lazily growing vertex pool.
//!
//! Builder places an edge between two vertices not yet joined, Painter colours
//! it red or blue. Builder wins on a red copy of `H` or a blue `K_k`.
//! `U` is the set of vertices incident to at least `L` placed edges, refreshed
//! after each turn.

use rand::{Rng, RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{Action, CountingRng, FinalState, GameTranscript, Outcome, Turn};
use crate::clique::{max_clique, BitMatrix};
use crate::density::minimal_balanced_core;
use crate::error::{Error, Result};
use crate::graph::{canonical, AdjacencyView, Graph, GrowingGraph};
use crate::random::{check_probability, next_unit, Stream};
use crate::subgraph::EdgeCompletion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnlineRamseyConfig {
    pub k: usize,
    /// Degree threshold for `U`.
    pub l: usize,
    pub turn_cap: usize,
    /// Largest number of vertices the pool may grow to.
    pub pool_cap: usize,
}

impl OnlineRamseyConfig {
    /// `L = floor((k-1)/4)`, `N = floor(L n / 2)`, turn cap `N`, pool cap `4N`.
    pub fn derived(k: usize, n: usize) -> Self {
        let l = k.saturating_sub(1) / 4;
        let big_n = l * n / 2;
        OnlineRamseyConfig {
            k,
            l,
            turn_cap: big_n,
            pool_cap: 4 * big_n,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OnlineRamseyState {
    config: OnlineRamseyConfig,
    red: GrowingGraph,
    blue: GrowingGraph,
    degree: Vec<usize>,
    turn: usize,
}

impl OnlineRamseyState {
    fn new(config: OnlineRamseyConfig) -> Self {
        OnlineRamseyState {
            config,
            red: GrowingGraph::new(0),
            blue: GrowingGraph::new(0),
            degree: Vec::new(),
            turn: 0,
        }
    }

    pub fn config(&self) -> &OnlineRamseyConfig {
        &self.config
    }

    /// Vertices touched so far form a prefix `0..vertices()` of the pool.
    pub fn vertices(&self) -> usize {
        self.degree.len()
    }

    pub fn turn(&self) -> usize {
        self.turn
    }

    pub fn red(&self) -> &GrowingGraph {
        &self.red
    }

    pub fn blue(&self) -> &GrowingGraph {
        &self.blue
    }

    pub fn is_placed(&self, u: u32, v: u32) -> bool {
        self.red.has_edge(u, v) || self.blue.has_edge(u, v)
    }

    /// Edges placed at `v` by builder.
    pub fn builder_degree(&self, v: u32) -> usize {
        self.degree.get(v as usize).copied().unwrap_or(0)
    }

    pub fn in_u(&self, v: u32) -> bool {
        self.builder_degree(v) >= self.config.l
    }

    /// Extends the touched prefix to cover both endpoints.
    fn touch(&mut self, (u, v): (u32, u32)) {
        let need = u.max(v) as usize + 1;
        self.red.grow_to(need);
        self.blue.grow_to(need);
        if self.degree.len() < need {
            self.degree.resize(need, 0);
        }
    }

    fn place(&mut self, (u, v): (u32, u32), red: bool) {
        if red {
            self.red.insert(u, v);
        } else {
            self.blue.insert(u, v);
        }
        self.degree[u as usize] += 1;
        self.degree[v as usize] += 1;
        self.turn += 1;
    }
}

pub trait BuilderStrategy {
    fn name(&self) -> &str;

    /// Next edge to place, or `None` to stop.
    fn next_edge(&mut self, state: &OnlineRamseyState, rng: &mut dyn RngCore) -> Option<(u32, u32)>;
}

pub trait PainterStrategy {
    fn name(&self) -> &str;

    /// `Action::Red` or `Action::Blue` for the edge just placed.
    fn color(&mut self, state: &OnlineRamseyState, edge: (u32, u32), rng: &mut dyn RngCore) -> Action;
}

/// Blue by default. An edge inside `U` becomes red with probability `p`
/// unless that would complete a red copy of the core `H_0`.
#[derive(Clone, Debug)]
pub struct ThresholdPainter {
    p: f64,
    core: Graph,
    check: EdgeCompletion,
}

impl ThresholdPainter {
    pub fn new(h: &Graph, p: f64) -> Result<Self> {
        check_probability(p)?;
        let core = minimal_balanced_core(h)?;
        let check = EdgeCompletion::new(&core);
        Ok(ThresholdPainter { p, core, check })
    }

    pub fn core(&self) -> &Graph {
        &self.core
    }
}

impl PainterStrategy for ThresholdPainter {
    fn name(&self) -> &str {
        "threshold"
    }

    fn color(&mut self, state: &OnlineRamseyState, (u, v): (u32, u32), rng: &mut dyn RngCore) -> Action {
        if state.in_u(u) && state.in_u(v) && next_unit(rng) < self.p && !self.check.completes(state.red(), u, v) {
            Action::Red
        } else {
            Action::Blue
        }
    }
}

/// Uniformly random unplaced pair among the first `pool` vertices.
#[derive(Clone, Debug)]
pub struct RandomBuilder {
    pool: usize,
}

impl RandomBuilder {
    pub fn new(pool: usize) -> Self {
        RandomBuilder { pool }
    }
}

impl BuilderStrategy for RandomBuilder {
    fn name(&self) -> &str {
        "random"
    }

    fn next_edge(&mut self, state: &OnlineRamseyState, rng: &mut dyn RngCore) -> Option<(u32, u32)> {
        let pool = self.pool.min(state.config().pool_cap) as u32;
        if pool < 2 {
            return None;
        }
        for _ in 0..64 {
            let u = rng.random_range(0..pool);
            let v = rng.random_range(0..pool - 1);
            let v = if v >= u { v + 1 } else { v };
            if !state.is_placed(u, v) {
                return Some(canonical(u, v));
            }
        }
        (0..pool)
            .flat_map(|u| (u + 1..pool).map(move |v| (u, v)))
            .find(|&(u, v)| !state.is_placed(u, v))
    }
}

/// Raises `2k` target vertices into `U` with stars on fresh leaves, then joins
/// every pair of the first `k` targets, then every pair of all `2k` targets.
#[derive(Clone, Debug)]
pub struct PumpBuilder {
    k: u32,
    next_fresh: u32,
    cursor: usize,
}

impl PumpBuilder {
    pub fn new(k: usize) -> Self {
        PumpBuilder {
            k: k as u32,
            next_fresh: 2 * k as u32,
            cursor: 0,
        }
    }

    fn dense_pairs(&self) -> impl Iterator<Item = (u32, u32)> {
        let k = self.k;
        let inner = (0..k).flat_map(move |u| (u + 1..k).map(move |v| (u, v)));
        let outer = (0..2 * k).flat_map(move |u| (u + 1..2 * k).map(move |v| (u, v))).filter(move |&(_, v)| v >= k);
        inner.chain(outer)
    }
}

impl BuilderStrategy for PumpBuilder {
    fn name(&self) -> &str {
        "pump"
    }

    fn next_edge(&mut self, state: &OnlineRamseyState, _rng: &mut dyn RngCore) -> Option<(u32, u32)> {
        let cap = state.config().pool_cap as u32;
        if cap < 2 * self.k {
            return None;
        }
        for t in 0..2 * self.k {
            if state.builder_degree(t) >= state.config().l {
                continue;
            }
            if self.next_fresh < cap {
                let leaf = self.next_fresh;
                self.next_fresh += 1;
                return Some((t, leaf));
            }
            if let Some(w) = (0..cap).find(|&w| w != t && !state.is_placed(t, w)) {
                return Some(canonical(t, w));
            }
        }
        let pairs: Vec<(u32, u32)> = self.dense_pairs().skip(self.cursor).collect();
        for (i, (u, v)) in pairs.into_iter().enumerate() {
            if !state.is_placed(u, v) {
                self.cursor += i + 1;
                return Some((u, v));
            }
        }
        self.cursor = usize::MAX;
        None
    }
}

pub fn builder_by_name(name: &str, k: usize, pool: usize) -> Result<Box<dyn BuilderStrategy + Send>> {
    match name {
        "random" => Ok(Box::new(RandomBuilder::new(pool))),
        "pump" => Ok(Box::new(PumpBuilder::new(k))),
        other => Err(Error::InvalidParameter(format!("unknown builder `{other}`"))),
    }
}

/// Vertices of a `k`-clique containing both `u` and `v` in `graph + {u, v}`.
pub fn clique_through<A: AdjacencyView>(graph: &A, u: u32, v: u32, k: usize) -> Option<Vec<u32>> {
    if k < 2 || u == v {
        return None;
    }
    if k == 2 {
        return Some(vec![u.min(v), u.max(v)]);
    }
    let (nu, nv) = (graph.neighbors(u), graph.neighbors(v));
    let common: Vec<u32> = nu.iter().copied().filter(|w| nv.binary_search(w).is_ok()).collect();
    if common.len() < k - 2 {
        return None;
    }
    let mut adj = BitMatrix::new(common.len());
    for (i, &a) in common.iter().enumerate() {
        for (j, &b) in common.iter().enumerate().skip(i + 1) {
            if graph.has_edge(a, b) {
                adj.set(i, j);
            }
        }
    }
    let best = max_clique(&adj, u64::MAX);
    (best.clique.len() >= k - 2).then(|| {
        let mut out: Vec<u32> = best.clique.iter().take(k - 2).map(|&i| common[i]).collect();
        out.extend([u, v]);
        out.sort_unstable();
        out
    })
}

struct Detector {
    red: EdgeCompletion,
    k: usize,
}

impl Detector {
    /// Outcome caused by colouring `edge` with `action`, checked before insertion.
    fn outcome(&self, state: &OnlineRamseyState, (u, v): (u32, u32), action: Action) -> Option<Outcome> {
        match action {
            Action::Red if self.red.completes(state.red(), u, v) => Some(Outcome::RedH),
            Action::Blue if clique_through(state.blue(), u, v, self.k).is_some() => Some(Outcome::BlueKk),
            _ => None,
        }
    }
}

fn validate(state: &OnlineRamseyState, (u, v): (u32, u32), turn: usize) -> Result<(u32, u32)> {
    let cap = state.config().pool_cap;
    if u == v || u as usize >= cap || v as usize >= cap {
        return Err(Error::RuleViolation {
            turn,
            reason: format!("edge {:?} is not a pair of distinct pool vertices (pool cap {cap})", (u, v)),
        });
    }
    let pair = canonical(u, v);
    if state.is_placed(u, v) {
        return Err(Error::RuleViolation {
            turn,
            reason: format!("edge {pair:?} was already placed"),
        });
    }
    Ok(pair)
}

fn final_state(state: &OnlineRamseyState) -> FinalState {
    FinalState::OnlineRamsey {
        red: state.red.to_graph(),
        blue: state.blue.to_graph(),
    }
}

/// Plays until a red copy of `h`, a blue `K_k`, builder stopping, or the turn cap.
pub fn run_online_ramsey(
    h: &Graph,
    config: OnlineRamseyConfig,
    builder: &mut dyn BuilderStrategy,
    painter: &mut dyn PainterStrategy,
    rng: &mut Stream,
) -> Result<GameTranscript> {
    if h.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    let detector = Detector {
        red: EdgeCompletion::new(h),
        k: config.k,
    };
    let mut builder_rng = CountingRng::new(Stream::seed_from_u64(rng.next_u64()));
    let mut painter_rng = CountingRng::new(Stream::seed_from_u64(rng.next_u64()));
    let mut state = OnlineRamseyState::new(config);
    let mut turns = Vec::new();
    let outcome = loop {
        if state.turn >= config.turn_cap {
            break Outcome::TurnCap;
        }
        let before = builder_rng.draws() + painter_rng.draws();
        let Some(edge) = builder.next_edge(&state, &mut builder_rng) else {
            break Outcome::Exhausted;
        };
        let edge = validate(&state, edge, state.turn)?;
        state.touch(edge);
        let action = painter.color(&state, edge, &mut painter_rng);
        if !matches!(action, Action::Red | Action::Blue) {
            return Err(Error::RuleViolation {
                turn: state.turn,
                reason: format!("{} answered {action:?}", painter.name()),
            });
        }
        let result = detector.outcome(&state, edge, action);
        state.place(edge, action == Action::Red);
        turns.push(Turn {
            pair: edge,
            action,
            draws: builder_rng.draws() + painter_rng.draws() - before,
        });
        if let Some(outcome) = result {
            break outcome;
        }
    };
    Ok(GameTranscript {
        players: (builder.name().to_string(), painter.name().to_string()),
        turns,
        outcome,
        final_state: final_state(&state),
    })
}

/// Re-applies a transcript, checking legality, outcome detection and final graphs.
pub fn replay_online_ramsey(h: &Graph, config: OnlineRamseyConfig, transcript: &GameTranscript) -> Result<()> {
    let detector = Detector {
        red: EdgeCompletion::new(h),
        k: config.k,
    };
    let mut state = OnlineRamseyState::new(config);
    let mut outcome = None;
    for (turn, t) in transcript.turns.iter().enumerate() {
        if outcome.is_some() || turn >= config.turn_cap {
            return Err(Error::RuleViolation {
                turn,
                reason: "play continued after the game ended".into(),
            });
        }
        let edge = validate(&state, t.pair, turn)?;
        state.touch(edge);
        outcome = detector.outcome(&state, edge, t.action);
        state.place(edge, t.action == Action::Red);
    }
    let expected = match outcome {
        Some(o) => o,
        None if state.turn >= config.turn_cap => Outcome::TurnCap,
        None => Outcome::Exhausted,
    };
    if expected != transcript.outcome || final_state(&state) != transcript.final_state {
        return Err(Error::RuleViolation {
            turn: state.turn,
            reason: "replayed outcome or final graphs differ".into(),
        });
    }
    Ok(())
}
