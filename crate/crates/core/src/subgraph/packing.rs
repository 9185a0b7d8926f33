//! Edge-disjoint packings of the copies meeting a vertex set `K`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{k_set_stats, membership, CopyIndex};
use crate::clique::max_independent_set;
use crate::error::{Error, Result};

pub const DEFAULT_COPY_CAP: usize = 5_000;
pub const DEFAULT_PACKING_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingReport {
    pub k_set: Vec<u32>,
    /// Copies with at least one edge inside `K`.
    pub h_k: usize,
    /// Copies in `h_k` meeting `K` in exactly `r` vertices.
    pub h_star_k: usize,
    /// Maximum edge-disjoint subfamily of the `h_star_k` copies.
    pub i_k: usize,
    /// Greedy inclusion-maximal edge-disjoint subfamily of the other `h_k` copies.
    pub t_k: usize,
    /// Greedy inclusion-maximal edge-disjoint family of qualifying pair unions.
    pub p_k: usize,
    pub y_k: usize,
    pub delta: usize,
    pub pattern_edges: usize,
    pub claim2_rhs: u128,
    pub claim2_holds: bool,
    /// Copy ids of the maximum packing.
    pub i_k_copies: Vec<u32>,
}

/// Greedy scan keeping every edge set disjoint from those kept before it.
fn greedy_disjoint(sets: impl IntoIterator<Item = Vec<u32>>) -> usize {
    let mut used: HashSet<u32> = HashSet::new();
    let mut kept = 0;
    for set in sets {
        if set.iter().all(|e| !used.contains(e)) {
            used.extend(set);
            kept += 1;
        }
    }
    kept
}

fn sorted_union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn shares_edge(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Packing sizes for `K` and the deterministic inequality
/// `Y_K <= |I_K| + 2 e_H^2 (|T_K| + |P_K|) Delta_H`.
///
/// Fails if more than `cap` copies meet `K` in exactly `r` vertices, or if
/// the exact packing search exceeds `budget` node expansions.
pub fn packing_report(index: &CopyIndex, k_set: &[u32], cap: usize, budget: u64) -> Result<PackingReport> {
    let (inside, k_sorted) = membership(index.host_n(), k_set)?;
    let r = index.uniformity();
    let edge_inside = |e: u32| index.host_edge(e as usize).iter().all(|&v| inside[v as usize]);

    let mut star = Vec::new();
    let mut rest = Vec::new();
    for (id, copy) in index.copies().iter().enumerate() {
        if !copy.edges.iter().any(|&e| edge_inside(e)) {
            continue;
        }
        let meet = copy.vertices.iter().filter(|&&v| inside[v as usize]).count();
        if meet == r {
            star.push(id);
        } else {
            rest.push(id);
        }
    }
    if star.len() > cap {
        return Err(Error::PackingInfeasible {
            copies: star.len(),
            cap,
        });
    }

    let copies = index.copies();
    let mut conflict = vec![Vec::new(); star.len()];
    for i in 0..star.len() {
        for j in i + 1..star.len() {
            if shares_edge(&copies[star[i]].edges, &copies[star[j]].edges) {
                conflict[i].push(j);
                conflict[j].push(i);
            }
        }
    }
    let (chosen, _) = max_independent_set(&conflict, budget).ok_or(Error::PackingBudgetExhausted { budget })?;
    let i_k_copies: Vec<u32> = chosen.iter().map(|&i| star[i] as u32).collect();

    let t_k = greedy_disjoint(rest.iter().map(|&id| copies[id].edges.clone()));

    let trace = |id: usize| -> Vec<u32> {
        copies[id]
            .vertices
            .iter()
            .copied()
            .filter(|&v| inside[v as usize])
            .collect()
    };
    let traces: Vec<Vec<u32>> = star.iter().map(|&id| trace(id)).collect();
    let mut pairs = Vec::new();
    for i in 0..star.len() {
        for j in i + 1..star.len() {
            let (a, b) = (&copies[star[i]].edges, &copies[star[j]].edges);
            if traces[i] != traces[j] && shares_edge(a, b) {
                pairs.push(sorted_union(a, b));
            }
        }
    }
    let p_k = greedy_disjoint(pairs);

    let y_k = k_set_stats(index, &k_sorted, None)?.y_k;
    let e_h = index.pattern_edges() as u128;
    let claim2_rhs = i_k_copies.len() as u128 + 2 * e_h * e_h * (t_k + p_k) as u128 * index.delta() as u128;
    Ok(PackingReport {
        k_set: k_sorted,
        h_k: star.len() + rest.len(),
        h_star_k: star.len(),
        i_k: i_k_copies.len(),
        t_k,
        p_k,
        y_k,
        delta: index.delta(),
        pattern_edges: index.pattern_edges(),
        claim2_rhs,
        claim2_holds: y_k as u128 <= claim2_rhs,
        i_k_copies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::subgraph::enumerate_copies;

    fn report(host: &Graph, k: &[u32]) -> PackingReport {
        let idx = enumerate_copies(host, &Graph::complete(3)).unwrap();
        packing_report(&idx, k, DEFAULT_COPY_CAP, DEFAULT_PACKING_BUDGET).unwrap()
    }

    #[test]
    fn k4_pair() {
        let r = report(&Graph::complete(4), &[0, 1]);
        assert_eq!((r.h_star_k, r.i_k, r.t_k, r.p_k, r.y_k), (2, 1, 0, 0, 1));
        assert!(r.claim2_holds);
    }

    #[test]
    fn triangle_inside_k() {
        let r = report(&Graph::complete(3), &[0, 1, 2]);
        assert_eq!((r.h_k, r.h_star_k, r.t_k), (1, 0, 1));
        assert!(r.claim2_holds);
    }

    #[test]
    fn copy_free_host() {
        let r = report(&Graph::cycle(6).unwrap(), &[0, 1, 2]);
        assert_eq!((r.h_k, r.i_k, r.t_k, r.p_k, r.y_k, r.claim2_rhs), (0, 0, 0, 0, 0, 0));
        assert!(r.claim2_holds);
    }

    #[test]
    fn pair_unions_need_distinct_traces() {
        // Triangles 0-1-4 and 1-2-4 share edge 1-4 and meet K={0,1,2} in {0,1} and {1,2}.
        let host = Graph::from_edges(5, [(0, 1), (1, 2), (0, 4), (1, 4), (2, 4)]).unwrap();
        let r = report(&host, &[0, 1, 2]);
        assert_eq!((r.h_star_k, r.i_k, r.p_k), (2, 1, 1));
    }

    #[test]
    fn cap_is_enforced() {
        let idx = enumerate_copies(&Graph::complete(8), &Graph::complete(3)).unwrap();
        assert!(matches!(
            packing_report(&idx, &[0, 1], 3, DEFAULT_PACKING_BUDGET),
            Err(Error::PackingInfeasible { copies: 6, cap: 3 })
        ));
    }
}
