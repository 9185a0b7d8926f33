//! Batches of RPS and Builder/Painter games.

use serde::{Deserialize, Serialize};

use super::{frequency, run_trials, PlotPoint, Report};
use crate::alteration::independence_number;
use crate::error::Result;
use crate::games::online::builder_by_name;
use crate::games::rps::{decider_by_name, proposer_by_name};
use crate::games::{run_online_ramsey, run_rps, FinalState, OnlineRamseyConfig, Outcome, ThresholdPainter};
use crate::graph::Graph;
use crate::random::RandomSource;
use crate::subgraph::find_copy;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RpsConfig {
    pub n: usize,
    pub k: usize,
    /// Acceptance probability of the random decider.
    pub p: f64,
    pub proposer: String,
    pub decider: String,
    pub trials: usize,
    pub seed: u64,
    /// Node budget of each independence computation.
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RpsRecord {
    pub trial: usize,
    pub turns: usize,
    pub edges: usize,
    /// Lower and upper bounds on the independence number of the final graph.
    pub alpha_lower: usize,
    pub alpha_upper: usize,
    /// `Some(true)` when the final graph has an independent `k`-set; `None` if undecided.
    pub proposer_wins: Option<bool>,
    /// The final graph contains a copy of the pattern (never expected).
    pub contains_pattern: bool,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RpsSummary {
    pub config: RpsConfig,
    /// Among decided trials.
    pub proposer_win_frequency: f64,
    pub undetermined: usize,
    pub pattern_violations: usize,
    pub mean_edges: f64,
}

/// Plays `trials` games; trial `t` uses substream `("rps", t)`.
pub fn run_rps_experiment(h: &Graph, config: &RpsConfig) -> Result<Report<RpsRecord, RpsSummary>> {
    // Validate names and probability before spawning work.
    proposer_by_name(&config.proposer)?;
    decider_by_name(&config.decider, config.p)?;
    let source = RandomSource::new(config.seed);
    let records = run_trials(config.trials, |t| {
        let mut proposer = proposer_by_name(&config.proposer)?;
        let mut decider = decider_by_name(&config.decider, config.p)?;
        let mut rng = source.stream("rps", t as u64);
        let transcript = run_rps(config.n, h, proposer.as_mut(), decider.as_mut(), &mut rng)?;
        let FinalState::Rps { graph } = &transcript.final_state else {
            unreachable!("RPS games end in an RPS state");
        };
        let alpha = independence_number(graph, config.budget);
        let proposer_wins = if alpha.lower >= config.k {
            Some(true)
        } else if alpha.upper < config.k {
            Some(false)
        } else {
            None
        };
        Ok(RpsRecord {
            trial: t,
            turns: transcript.turns.len(),
            edges: graph.edge_count(),
            alpha_lower: alpha.lower,
            alpha_upper: alpha.upper,
            proposer_wins,
            contains_pattern: find_copy(graph, h)?.is_some(),
            digest: transcript.digest(),
        })
    })?;
    let summary = RpsSummary {
        config: config.clone(),
        proposer_win_frequency: frequency(records.iter().filter_map(|r| r.proposer_wins)),
        undetermined: records.iter().filter(|r| r.proposer_wins.is_none()).count(),
        pattern_violations: records.iter().filter(|r| r.contains_pattern).count(),
        mean_edges: super::mean(records.iter().map(|r| r.edges as f64)),
    };
    let plot = vec![PlotPoint {
        series: "proposer-win".into(),
        x: config.p,
        y: summary.proposer_win_frequency,
    }];
    Ok(Report {
        records,
        summary,
        plot,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuilderConfig {
    pub n: usize,
    pub k: usize,
    /// Red probability of the threshold painter.
    pub p: f64,
    pub builder: String,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuilderRecord {
    pub trial: usize,
    pub turns: usize,
    pub outcome: Outcome,
    pub red_edges: usize,
    /// Painter avoided both a red copy of the core and a blue `K_k`.
    pub survived: bool,
    /// The red graph contains a copy of the core (never expected).
    pub red_core: bool,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuilderSummary {
    pub config: BuilderConfig,
    pub game: OnlineRamseyConfig,
    pub core_edges: usize,
    pub survival_frequency: f64,
    pub red_core_violations: usize,
    pub blue_clique_losses: usize,
}

/// Plays `trials` online Ramsey games against the threshold painter.
pub fn run_builder_experiment(h: &Graph, config: &BuilderConfig) -> Result<Report<BuilderRecord, BuilderSummary>> {
    let game = OnlineRamseyConfig::derived(config.k, config.n);
    let pool = game.pool_cap.max(2);
    builder_by_name(&config.builder, config.k, pool)?;
    let reference = ThresholdPainter::new(h, config.p)?;
    let core = reference.core().clone();
    let source = RandomSource::new(config.seed);
    let records = run_trials(config.trials, |t| {
        let mut builder = builder_by_name(&config.builder, config.k, pool)?;
        let mut painter = reference.clone();
        let mut rng = source.stream("builder-game", t as u64);
        let transcript = run_online_ramsey(h, game, builder.as_mut(), &mut painter, &mut rng)?;
        let FinalState::OnlineRamsey { red, .. } = &transcript.final_state else {
            unreachable!("online games end in an online state");
        };
        Ok(BuilderRecord {
            trial: t,
            turns: transcript.turns.len(),
            outcome: transcript.outcome,
            red_edges: red.edge_count(),
            survived: !matches!(transcript.outcome, Outcome::RedH | Outcome::BlueKk),
            red_core: find_copy(red, &core)?.is_some(),
            digest: transcript.digest(),
        })
    })?;
    let summary = BuilderSummary {
        config: config.clone(),
        game,
        core_edges: core.edge_count(),
        survival_frequency: frequency(records.iter().map(|r| r.survived)),
        red_core_violations: records.iter().filter(|r| r.red_core).count(),
        blue_clique_losses: records.iter().filter(|r| r.outcome == Outcome::BlueKk).count(),
    };
    let plot = vec![PlotPoint {
        series: "survival".into(),
        x: config.n as f64,
        y: summary.survival_frequency,
    }];
    Ok(Report {
        records,
        summary,
        plot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn always_reject_lets_the_proposer_win() {
        let config = RpsConfig {
            n: 12,
            k: 5,
            p: 0.0,
            proposer: "random-legal".into(),
            decider: "always-reject".into(),
            trials: 10,
            seed: 2,
            budget: 1_000_000,
        };
        let rep = run_rps_experiment(&Graph::complete(3), &config).unwrap();
        assert_eq!(rep.summary.proposer_win_frequency, 1.0);
        assert!(rep.records.iter().all(|r| r.edges == 0));
    }

    #[test]
    fn random_decider_batch_is_pattern_free_and_deterministic() {
        let config = RpsConfig {
            n: 14,
            k: 5,
            p: 0.6,
            proposer: "random-legal".into(),
            decider: "random".into(),
            trials: 20,
            seed: 5,
            budget: 1_000_000,
        };
        let a = run_rps_experiment(&Graph::complete(3), &config).unwrap();
        let b = run_rps_experiment(&Graph::complete(3), &config).unwrap();
        assert_eq!(a.summary.pattern_violations, 0);
        assert_eq!(a.summary_json().unwrap(), b.summary_json().unwrap());
        assert_eq!(a.summary.undetermined, 0);
    }

    #[test]
    fn pump_builder_never_gets_a_red_core() {
        let config = BuilderConfig {
            n: 20,
            k: 9,
            p: 0.5,
            builder: "pump".into(),
            trials: 20,
            seed: 3,
        };
        let rep = run_builder_experiment(&Graph::complete(3), &config).unwrap();
        assert_eq!(rep.summary.game.l, 2);
        assert_eq!(rep.summary.red_core_violations, 0);
        assert!(rep.records.iter().all(|r| r.outcome != Outcome::RedH));
    }
}
