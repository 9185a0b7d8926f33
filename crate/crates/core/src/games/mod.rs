//! Turn-based engines for the Ramsey, Paper, Scissors game and the
//! Builder/Painter online Ramsey game.

pub mod online;
pub mod rps;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::random::fnv1a64;

pub use online::{
    run_online_ramsey, BuilderStrategy, OnlineRamseyConfig, OnlineRamseyState, PainterStrategy, PumpBuilder,
    RandomBuilder, ThresholdPainter,
};
pub use rps::{
    coupled_rps_check, run_rps, AlwaysReject, CouplingReport, DeciderStrategy, DenseFirstProposer,
    ProposerStrategy, RandomDecider, RandomLegalProposer, RpsState,
};

/// Counts calls into the wrapped generator.
#[derive(Clone, Debug)]
pub struct CountingRng<R> {
    inner: R,
    draws: u64,
}

impl<R: RngCore> CountingRng<R> {
    pub fn new(inner: R) -> Self {
        CountingRng { inner, draws: 0 }
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }
}

impl<R: RngCore> RngCore for CountingRng<R> {
    fn next_u32(&mut self) -> u32 {
        self.draws += 1;
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.draws += 1;
        self.inner.fill_bytes(dst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    Accept,
    Reject,
    Red,
    Blue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    pub pair: (u32, u32),
    pub action: Action,
    /// Random values consumed by both players during this turn.
    pub draws: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Red copy of the forbidden pattern.
    RedH,
    /// Blue clique on `k` vertices.
    BlueKk,
    /// No legal move remains.
    Exhausted,
    TurnCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "game", rename_all = "kebab-case")]
pub enum FinalState {
    Rps { graph: Graph },
    OnlineRamsey { red: Graph, blue: Graph },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTranscript {
    /// Strategy names, first player first.
    pub players: (String, String),
    pub turns: Vec<Turn>,
    pub outcome: Outcome,
    pub final_state: FinalState,
}

impl GameTranscript {
    /// FNV-1a digest of the JSON encoding, as 16 hex digits.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("transcripts serialize");
        format!("{:016x}", fnv1a64(json.as_bytes()))
    }
}
