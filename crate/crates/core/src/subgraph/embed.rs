//! Backtracking embedding search.
//!
//! Pattern vertices are placed in a connectivity order: each step prefers the
//! unplaced vertex with the most already-placed neighbours, so candidates come
//! from the host neighbourhood of a placed anchor and every pattern edge is
//! checked as soon as both endpoints are placed.

use std::ops::ControlFlow;

use crate::graph::{AdjacencyView, Graph, UniformHypergraph};

#[derive(Clone, Debug)]
struct Step {
    vertex: u32,
    anchor: Option<usize>,
    /// Positions of earlier-placed neighbours.
    back: Vec<usize>,
    degree: usize,
}

/// Placement order for a graph pattern, optionally starting from a fixed prefix.
#[derive(Clone, Debug)]
pub(crate) struct GraphPlan {
    steps: Vec<Step>,
    prefix: usize,
}

fn connectivity_order(
    n: usize,
    neighbors: impl Fn(u32) -> Vec<u32>,
    prefix: &[u32],
) -> Vec<u32> {
    let mut placed = vec![false; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    for &v in prefix {
        placed[v as usize] = true;
        order.push(v);
    }
    while order.len() < n {
        let next = (0..n as u32)
            .filter(|&v| !placed[v as usize])
            .max_by_key(|&v| {
                let nb = neighbors(v);
                let back = nb.iter().filter(|&&w| placed[w as usize]).count();
                (back, nb.len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        placed[next as usize] = true;
        order.push(next);
    }
    order
}

impl GraphPlan {
    pub(crate) fn new(pattern: &Graph, prefix: &[u32]) -> GraphPlan {
        let order = connectivity_order(pattern.n(), |v| pattern.neighbors(v).to_vec(), prefix);
        let mut position = vec![0usize; pattern.n()];
        for (i, &v) in order.iter().enumerate() {
            position[v as usize] = i;
        }
        let steps = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut back: Vec<usize> = pattern
                    .neighbors(v)
                    .iter()
                    .map(|&w| position[w as usize])
                    .filter(|&p| p < i)
                    .collect();
                back.sort_unstable();
                Step {
                    vertex: v,
                    anchor: back.first().copied(),
                    back,
                    degree: pattern.degree(v),
                }
            })
            .collect();
        GraphPlan {
            steps,
            prefix: prefix.len(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.steps.len()
    }

    /// Pattern vertex placed at each position.
    pub(crate) fn vertex_at(&self, position: usize) -> u32 {
        self.steps[position].vertex
    }

    /// Visits every injective edge-preserving map extending `fixed`
    /// (host images of the prefix, whose mutual pattern edges are not checked).
    /// The slice passed to `visit` is indexed by position.
    pub(crate) fn for_each_embedding<A: AdjacencyView>(
        &self,
        host: &A,
        fixed: &[u32],
        visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        debug_assert_eq!(fixed.len(), self.prefix);
        let mut mapped = Vec::with_capacity(self.steps.len());
        mapped.extend_from_slice(fixed);
        self.extend(host, &mut mapped, visit)
    }

    fn extend<A: AdjacencyView>(
        &self,
        host: &A,
        mapped: &mut Vec<u32>,
        visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let i = mapped.len();
        if i == self.steps.len() {
            return visit(mapped);
        }
        let step = &self.steps[i];
        let accept = |c: u32, mapped: &[u32]| {
            host.degree(c) >= step.degree
                && !mapped.contains(&c)
                && step.back.iter().all(|&b| host.has_edge(mapped[b], c))
        };
        match step.anchor {
            Some(a) => {
                let anchor = mapped[a];
                for idx in 0..host.degree(anchor) {
                    let c = host.neighbors(anchor)[idx];
                    if accept(c, mapped) {
                        mapped.push(c);
                        let flow = self.extend(host, mapped, visit);
                        mapped.pop();
                        flow?;
                    }
                }
            }
            None => {
                for c in 0..host.vertex_count() as u32 {
                    if accept(c, mapped) {
                        mapped.push(c);
                        let flow = self.extend(host, mapped, visit);
                        mapped.pop();
                        flow?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }
}

/// Plans for testing whether a new edge `{x, y}` completes a copy of a pattern.
#[derive(Clone, Debug)]
pub struct EdgeCompletion {
    plans: Vec<GraphPlan>,
}

impl EdgeCompletion {
    pub fn new(pattern: &Graph) -> EdgeCompletion {
        // One plan per pattern edge orientation.
        let plans = pattern
            .edges()
            .iter()
            .flat_map(|&(a, b)| [[a, b], [b, a]])
            .map(|prefix| GraphPlan::new(pattern, &prefix))
            .collect();
        EdgeCompletion { plans }
    }

    /// True iff `host + {x, y}` contains a pattern copy using the pair `{x, y}`.
    /// The pair itself need not be present in `host`.
    pub fn completes<A: AdjacencyView>(&self, host: &A, x: u32, y: u32) -> bool {
        self.find(host, x, y).is_some()
    }

    /// Host vertices of one completed copy, indexed by pattern vertex.
    pub fn find<A: AdjacencyView>(&self, host: &A, x: u32, y: u32) -> Option<Vec<u32>> {
        for plan in &self.plans {
            let mut found = None;
            let flow = plan.for_each_embedding(host, &[x, y], &mut |m| {
                let mut image = vec![0u32; m.len()];
                for (pos, &h) in m.iter().enumerate() {
                    image[plan.vertex_at(pos) as usize] = h;
                }
                found = Some(image);
                ControlFlow::Break(())
            });
            if flow.is_break() {
                return found;
            }
        }
        None
    }
}

/// Placement order for a hypergraph pattern.
#[derive(Clone, Debug)]
pub(crate) struct HyperPlan {
    order: Vec<u32>,
    anchors: Vec<Option<usize>>,
    degrees: Vec<usize>,
    /// Pattern edges, as positions, closed at each step.
    closing: Vec<Vec<Vec<usize>>>,
}

pub(crate) fn two_section(h: &UniformHypergraph) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); h.n()];
    for e in h.edges() {
        for &u in e {
            for &v in e {
                if u != v {
                    adj[u as usize].push(v);
                }
            }
        }
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    adj
}

pub(crate) fn incidence_degrees(h: &UniformHypergraph) -> Vec<usize> {
    let mut deg = vec![0; h.n()];
    for e in h.edges() {
        for &v in e {
            deg[v as usize] += 1;
        }
    }
    deg
}

impl HyperPlan {
    pub(crate) fn new(pattern: &UniformHypergraph) -> HyperPlan {
        let adj = two_section(pattern);
        let order = connectivity_order(pattern.n(), |v| adj[v as usize].clone(), &[]);
        let mut position = vec![0usize; pattern.n()];
        for (i, &v) in order.iter().enumerate() {
            position[v as usize] = i;
        }
        let mut closing = vec![Vec::new(); order.len()];
        for e in pattern.edges() {
            let positions: Vec<usize> = e.iter().map(|&v| position[v as usize]).collect();
            let last = *positions.iter().max().expect("r >= 2");
            closing[last].push(positions);
        }
        let anchors = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                adj[v as usize]
                    .iter()
                    .map(|&w| position[w as usize])
                    .filter(|&p| p < i)
                    .min()
            })
            .collect();
        let pdeg = incidence_degrees(pattern);
        let degrees = order.iter().map(|&v| pdeg[v as usize]).collect();
        HyperPlan {
            order,
            anchors,
            degrees,
            closing,
        }
    }

    pub(crate) fn vertex_at(&self, position: usize) -> u32 {
        self.order[position]
    }

    pub(crate) fn for_each_embedding(
        &self,
        host: &UniformHypergraph,
        host_adj: &[Vec<u32>],
        host_deg: &[usize],
        visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut mapped = Vec::with_capacity(self.order.len());
        let mut scratch = Vec::new();
        self.extend(host, host_adj, host_deg, &mut mapped, &mut scratch, visit)
    }

    fn extend(
        &self,
        host: &UniformHypergraph,
        host_adj: &[Vec<u32>],
        host_deg: &[usize],
        mapped: &mut Vec<u32>,
        scratch: &mut Vec<u32>,
        visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let i = mapped.len();
        if i == self.order.len() {
            return visit(mapped);
        }
        let candidates: Vec<u32> = match self.anchors[i] {
            Some(a) => host_adj[mapped[a] as usize].clone(),
            None => (0..host.n() as u32).collect(),
        };
        for c in candidates {
            if host_deg[c as usize] < self.degrees[i] || mapped.contains(&c) {
                continue;
            }
            mapped.push(c);
            let ok = self.closing[i].iter().all(|positions| {
                scratch.clear();
                scratch.extend(positions.iter().map(|&p| mapped[p]));
                scratch.sort_unstable();
                host.edge_id(scratch).is_some()
            });
            if ok {
                let flow = self.extend(host, host_adj, host_deg, mapped, scratch, visit);
                if flow.is_break() {
                    mapped.pop();
                    return flow;
                }
            }
            mapped.pop();
        }
        ControlFlow::Continue(())
    }
}
