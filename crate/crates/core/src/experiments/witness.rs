//! Planted complete multipartite witnesses.
//!
//! Planting a complete `v_H`-partite graph on `v_H` disjoint `t`-subsets of
//! `K` gives at least `t^v_H` copies of `H` with all edges inside `K`: one per
//! transversal, mapping each pattern vertex to its own part.

use serde::{Deserialize, Serialize};

use super::binomial;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::random::check_probability;
use crate::subgraph::enumerate_copies;

/// Complete `v_H`-partite graph whose parts have `t` vertices each.
pub fn planted_witness(h: &Graph, t: usize) -> Graph {
    Graph::complete_multipartite(&vec![t; h.n()])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessCount {
    pub t: usize,
    pub pattern_vertices: usize,
    /// Copies of the pattern in the planted graph.
    pub copies: usize,
    /// `t^v_H`.
    pub transversals: u128,
    pub holds: bool,
}

/// Exact copy count of `h` in its planted witness with parts of size `t`.
pub fn witness_for_parts(h: &Graph, t: usize) -> Result<WitnessCount> {
    let planted = planted_witness(h, t);
    let copies = if planted.edge_count() == 0 {
        0
    } else {
        enumerate_copies(&planted, h)?.len()
    };
    let transversals = (t as u128).pow(h.n() as u32);
    Ok(WitnessCount {
        t,
        pattern_vertices: h.n(),
        copies,
        transversals,
        holds: copies as u128 >= transversals,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppendixWitnessReport {
    pub k: usize,
    pub n: usize,
    pub p: f64,
    pub delta: f64,
    /// `delta C(k, 2) p`.
    pub target: f64,
    /// Smallest `t` with `t^v_H >= target`.
    pub t: usize,
    pub count: WitnessCount,
    /// `|H_K| >= t^v_H >= target`.
    pub chain_holds: bool,
}

/// Smallest `t >= 1` with `t^v >= target`.
fn part_size(target: f64, v: usize) -> usize {
    let mut t = target.max(1.0).powf(1.0 / v as f64).floor().max(1.0) as usize;
    while ((t as f64).powi(v as i32)) < target {
        t += 1;
    }
    while t > 1 && ((t - 1) as f64).powi(v as i32) >= target {
        t -= 1;
    }
    t
}

/// Plants the witness on `K = {0, .., k-1}` inside `n` vertices and checks the inequality chain.
pub fn run_appendix_witness(h: &Graph, k: usize, n: usize, p: f64, delta: f64) -> Result<AppendixWitnessReport> {
    check_probability(p)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!("delta must lie in (0, 1] (got {delta})")));
    }
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    if h.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    let v = h.n();
    let target = delta * binomial(k, 2) * p;
    let t = part_size(target, v);
    if v * t > k {
        return Err(Error::InvalidParameter(format!(
            "v_H t = {v} * {t} = {} exceeds k = {k}; the parts do not fit inside K",
            v * t
        )));
    }
    // Every copy in the planted graph lies inside K, so |H_K| is the full count.
    let count = witness_for_parts(h, t)?;
    let chain_holds = count.holds && count.transversals as f64 >= target;
    Ok(AppendixWitnessReport {
        k,
        n,
        p,
        delta,
        target,
        t,
        count,
        chain_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn part_sizes() {
        assert_eq!(part_size(0.3, 3), 1);
        assert_eq!(part_size(1.0, 3), 1);
        assert_eq!(part_size(8.0, 3), 2);
        assert_eq!(part_size(8.01, 3), 3);
        assert_eq!(part_size(16.0, 4), 2);
    }

    #[test]
    fn planted_counts() {
        let k3 = Graph::complete(3);
        // One triangle per transversal.
        assert_eq!(witness_for_parts(&k3, 2).unwrap().copies, 8);
        assert_eq!(witness_for_parts(&k3, 3).unwrap().copies, 27);
        // Three 4-cycles per transversal of K_{2,2,2,2}, plus cycles using two parts twice.
        let c4 = Graph::cycle(4).unwrap();
        let w = witness_for_parts(&c4, 2).unwrap();
        assert!(w.holds && w.copies >= 16);
    }

    #[test]
    fn chain_and_infeasibility() {
        let k3 = Graph::complete(3);
        // target = 0.5 * 45 * 0.3 = 6.75, so t = 2.
        let rep = run_appendix_witness(&k3, 10, 20, 0.3, 0.5).unwrap();
        assert_eq!(rep.t, 2);
        assert!(rep.chain_holds);
        assert!(run_appendix_witness(&k3, 10, 20, 1.0, 1.0).is_err());
        assert!(run_appendix_witness(&k3, 10, 5, 0.3, 0.5).is_err());
    }
}
