//! Upper tail of the largest edge-disjoint family of present copies.
//!
//! `S` is the set of copies of `H` in `K_n` that meet `K = {0, .., |K|-1}` in
//! exactly two vertices and have an edge inside `K`. With `mu = sum over S of
//! p^e_H`, the bound checked is `Pr(Z >= x) <= (e mu / x)^x` where `Z` is the
//! largest edge-disjoint subfamily of `S` whose edges are all present in
//! `G(n, p)`.

use serde::{Deserialize, Serialize};

use super::{run_trials, PlotPoint, Report};
use crate::clique::max_independent_set;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::random::{check_probability, pair_rank, unit_from_u64, RandomSource};
use crate::subgraph::{enumerate_copies, DEFAULT_PACKING_BUDGET};
use rand::RngCore;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailConfig {
    pub n: usize,
    pub k_size: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    /// Grid points; defaults to every integer in `(mu, packing size]`.
    pub grid: Option<Vec<usize>>,
    /// Largest allowed `|S|`.
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailRecord {
    pub trial: usize,
    pub present: usize,
    pub z: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: usize,
    pub bound: f64,
    pub frequency: f64,
    /// Binomial standard error at `min(bound, 1)`.
    pub sigma: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailSummary {
    pub config: TailConfig,
    pub pattern_edges: usize,
    pub s_size: usize,
    pub mu: f64,
    /// Largest edge-disjoint subfamily of all of `S`.
    pub packing_size: usize,
    pub mean_z: f64,
    pub grid: Vec<GridPoint>,
    pub all_hold: bool,
}

/// `(e mu / x)^x`, with the conventions `x = 0 -> 1` and `mu = 0 -> 0` for `x > 0`.
pub fn tail_bound(mu: f64, x: usize) -> f64 {
    if x == 0 {
        1.0
    } else {
        (std::f64::consts::E * mu / x as f64).powi(x as i32)
    }
}

/// Size of the largest pairwise edge-disjoint subfamily of `members`.
fn disjoint_packing(copies: &[Vec<u64>], members: &[usize]) -> Result<usize> {
    let mut conflict = vec![Vec::new(); members.len()];
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if copies[members[i]].iter().any(|e| copies[members[j]].contains(e)) {
                conflict[i].push(j);
                conflict[j].push(i);
            }
        }
    }
    let (chosen, _) = max_independent_set(&conflict, DEFAULT_PACKING_BUDGET).ok_or(Error::PackingBudgetExhausted {
        budget: DEFAULT_PACKING_BUDGET,
    })?;
    Ok(chosen.len())
}

pub fn run_tail_check(h: &Graph, config: &TailConfig) -> Result<Report<TailRecord, TailSummary>> {
    check_probability(config.p)?;
    if config.k_size > config.n {
        return Err(Error::InvalidParameter(format!(
            "|K| = {} exceeds n = {}",
            config.k_size, config.n
        )));
    }
    let host = Graph::complete(config.n);
    let index = enumerate_copies(&host, h)?;
    let inside = |v: u32| (v as usize) < config.k_size;
    let s: Vec<Vec<u64>> = index
        .copies()
        .iter()
        .filter(|c| {
            c.vertices.iter().filter(|&&v| inside(v)).count() == 2
                && c.edges.iter().any(|&e| {
                    let (u, v) = host.edges()[e as usize];
                    inside(u) && inside(v)
                })
        })
        .map(|c| {
            c.edges
                .iter()
                .map(|&e| {
                    let (u, v) = host.edges()[e as usize];
                    pair_rank(u, v)
                })
                .collect()
        })
        .collect();
    if s.len() > config.cap {
        return Err(Error::PackingInfeasible {
            copies: s.len(),
            cap: config.cap,
        });
    }
    let e_h = h.edge_count();
    let mu = s.len() as f64 * config.p.powi(e_h as i32);
    let packing_size = disjoint_packing(&s, &(0..s.len()).collect::<Vec<_>>())?;

    let pairs = config.n * config.n.saturating_sub(1) / 2;
    let records = run_trials(config.trials, |t| {
        let mut rng = RandomSource::new(config.seed).stream("tail", t as u64);
        let present_pairs: Vec<bool> = (0..pairs).map(|_| unit_from_u64(rng.next_u64()) < config.p).collect();
        let present: Vec<usize> = (0..s.len())
            .filter(|&i| s[i].iter().all(|&r| present_pairs[r as usize]))
            .collect();
        Ok(TailRecord {
            trial: t,
            present: present.len(),
            z: disjoint_packing(&s, &present)?,
        })
    })?;

    let grid_xs: Vec<usize> = match &config.grid {
        Some(g) => g.clone(),
        None => (0..=packing_size).filter(|&x| x as f64 > mu).collect(),
    };
    let trials = records.len().max(1) as f64;
    let grid: Vec<GridPoint> = grid_xs
        .into_iter()
        .map(|x| {
            let bound = tail_bound(mu, x);
            let frequency = records.iter().filter(|r| r.z >= x).count() as f64 / trials;
            let b = bound.min(1.0);
            let sigma = (b * (1.0 - b) / trials).sqrt();
            GridPoint {
                x,
                bound,
                frequency,
                sigma,
                holds: frequency <= bound + 3.0 * sigma,
            }
        })
        .collect();
    let summary = TailSummary {
        config: config.clone(),
        pattern_edges: e_h,
        s_size: s.len(),
        mu,
        packing_size,
        mean_z: records.iter().map(|r| r.z as f64).sum::<f64>() / trials,
        all_hold: grid.iter().all(|g| g.holds),
        grid,
    };
    let mut plot = Vec::new();
    for g in &summary.grid {
        plot.push(PlotPoint {
            series: "empirical".into(),
            x: g.x as f64,
            y: g.frequency,
        });
        plot.push(PlotPoint {
            series: "bound".into(),
            x: g.x as f64,
            y: g.bound,
        });
    }
    Ok(Report {
        records,
        summary,
        plot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n: usize, k_size: usize, p: f64, trials: usize) -> TailConfig {
        TailConfig {
            n,
            k_size,
            p,
            trials,
            seed: 4,
            grid: None,
            cap: 5_000,
        }
    }

    #[test]
    fn example_sizes() {
        let rep = run_tail_check(&Graph::complete(3), &config(10, 4, 0.3, 200)).unwrap();
        assert_eq!(rep.summary.s_size, 36);
        assert!((rep.summary.mu - 36.0 * 0.027).abs() < 1e-12);
        assert_eq!(rep.summary.packing_size, 6);
    }

    #[test]
    fn empty_collection() {
        let rep = run_tail_check(&Graph::complete(4), &config(3, 2, 0.5, 20)).unwrap();
        assert_eq!((rep.summary.s_size, rep.summary.mu), (0, 0.0));
        assert!(rep.records.iter().all(|r| r.z == 0));
    }

    #[test]
    fn certain_edges_give_the_packing() {
        let rep = run_tail_check(&Graph::complete(3), &config(10, 4, 1.0, 5)).unwrap();
        assert!(rep.records.iter().all(|r| r.z == rep.summary.packing_size));
        for g in &rep.summary.grid {
            assert_eq!(g.frequency, 1.0);
        }
    }

    #[test]
    fn bound_conventions() {
        assert_eq!(tail_bound(0.0, 3), 0.0);
        assert_eq!(tail_bound(2.0, 0), 1.0);
        assert!((tail_bound(1.0, 1) - std::f64::consts::E).abs() < 1e-12);
    }
}
