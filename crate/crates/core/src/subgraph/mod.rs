//! Copy enumeration and the copy-derived statistics.
//!
//! A copy is identified by its set of host edges; patterns with isolated
//! vertices additionally carry their vertex set. Copies are stored in
//! lexicographic order of their (sorted) host edge ids, which is also the
//! lexicographic order of their canonical edge lists.

mod embed;
pub mod packing;

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Structure, UniformHypergraph};

pub use embed::EdgeCompletion;
pub(crate) use embed::{incidence_degrees, two_section, GraphPlan, HyperPlan};
pub use packing::{packing_report, PackingReport, DEFAULT_COPY_CAP, DEFAULT_PACKING_BUDGET};

/// One subgraph of the host isomorphic to the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Copy {
    /// Host edge ids, sorted.
    pub edges: Vec<u32>,
    /// Host vertices, sorted.
    pub vertices: Vec<u32>,
}

/// All copies of a pattern in a host, with per-edge coverage.
#[derive(Clone, Debug)]
pub struct CopyIndex {
    n: usize,
    r: usize,
    /// Host edges flattened with stride `r`.
    host_edges: Vec<u32>,
    pattern_vertices: usize,
    pattern_edges: usize,
    copies: Vec<Copy>,
    coverage: Vec<Vec<u32>>,
    delta: usize,
    delta2: usize,
}

impl CopyIndex {
    fn build(
        n: usize,
        r: usize,
        host_edges: Vec<u32>,
        pattern_vertices: usize,
        pattern_edges: usize,
        mut copies: Vec<Copy>,
    ) -> CopyIndex {
        copies.sort_unstable();
        let m = host_edges.len() / r;
        let mut coverage = vec![Vec::new(); m];
        let mut pairs: HashMap<(u32, u32), usize> = HashMap::new();
        for (id, copy) in copies.iter().enumerate() {
            for (i, &e) in copy.edges.iter().enumerate() {
                coverage[e as usize].push(id as u32);
                for &f in &copy.edges[i + 1..] {
                    *pairs.entry((e, f)).or_default() += 1;
                }
            }
        }
        let delta = coverage.iter().map(Vec::len).max().unwrap_or(0);
        let delta2 = pairs.values().copied().max().unwrap_or(0);
        CopyIndex {
            n,
            r,
            host_edges,
            pattern_vertices,
            pattern_edges,
            copies,
            coverage,
            delta,
            delta2,
        }
    }

    pub fn host_n(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn host_edge_count(&self) -> usize {
        self.host_edges.len() / self.r
    }

    pub fn host_edge(&self, id: usize) -> &[u32] {
        &self.host_edges[id * self.r..(id + 1) * self.r]
    }

    pub fn pattern_vertices(&self) -> usize {
        self.pattern_vertices
    }

    pub fn pattern_edges(&self) -> usize {
        self.pattern_edges
    }

    pub fn copies(&self) -> &[Copy] {
        &self.copies
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    /// Copy ids containing host edge `edge`.
    pub fn coverage(&self, edge: usize) -> &[u32] {
        &self.coverage[edge]
    }

    pub fn is_covered(&self, edge: usize) -> bool {
        !self.coverage[edge].is_empty()
    }

    /// Maximum number of copies through one host edge.
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Maximum number of copies through one pair of distinct host edges.
    pub fn delta2(&self) -> usize {
        self.delta2
    }

    /// Host edge ids covered by at least one copy.
    pub fn covered_edges(&self) -> Vec<usize> {
        (0..self.coverage.len())
            .filter(|&e| self.is_covered(e))
            .collect()
    }

    pub fn summary(&self) -> CopySummary {
        CopySummary {
            host_vertices: self.n,
            host_edges: self.host_edge_count(),
            uniformity: self.r,
            copies: self.copies.len(),
            covered_edges: self.coverage.iter().filter(|c| !c.is_empty()).count(),
            delta: self.delta,
            delta2: self.delta2,
        }
    }

    fn same_host(&self, other: &CopyIndex) -> bool {
        self.n == other.n && self.r == other.r && self.host_edges == other.host_edges
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopySummary {
    pub host_vertices: usize,
    pub host_edges: usize,
    pub uniformity: usize,
    pub copies: usize,
    pub covered_edges: usize,
    pub delta: usize,
    pub delta2: usize,
}

/// Enumerates every copy of `pattern` in `host`.
pub fn enumerate_copies(host: &Graph, pattern: &Graph) -> Result<CopyIndex> {
    if pattern.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    let host_edges: Vec<u32> = host.edges().iter().flat_map(|&(u, v)| [u, v]).collect();
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(CopyIndex::build(host.n(), 2, host_edges, pattern.n(), pattern.edge_count(), Vec::new()));
    }
    let keep_vertices = pattern.non_isolated().len() < pattern.n();
    let plan = GraphPlan::new(pattern, &[]);
    let mut seen: HashSet<Copy> = HashSet::new();
    let mut image = vec![0u32; pattern.n()];
    let _ = plan.for_each_embedding(host, &[], &mut |m| {
        for (pos, &h) in m.iter().enumerate() {
            image[plan.vertex_at(pos) as usize] = h;
        }
        let mut edges: Vec<u32> = pattern
            .edges()
            .iter()
            .map(|&(a, b)| {
                host.edge_id(image[a as usize], image[b as usize])
                    .expect("embedding preserves edges") as u32
            })
            .collect();
        edges.sort_unstable();
        let mut vertices = if keep_vertices {
            image.clone()
        } else {
            // Vertex set follows from the edges.
            edges
                .iter()
                .flat_map(|&e| {
                    let (u, v) = host.edges()[e as usize];
                    [u, v]
                })
                .collect()
        };
        vertices.sort_unstable();
        vertices.dedup();
        seen.insert(Copy { edges, vertices });
        ControlFlow::Continue(())
    });
    debug_assert!(plan.len() == pattern.n());
    Ok(CopyIndex::build(
        host.n(),
        2,
        host_edges,
        pattern.n(),
        pattern.edge_count(),
        seen.into_iter().collect(),
    ))
}

/// Enumerates every copy of an `r`-uniform pattern in an `r`-uniform host.
pub fn enumerate_hyper_copies(host: &UniformHypergraph, pattern: &UniformHypergraph) -> Result<CopyIndex> {
    if pattern.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    if host.r() != pattern.r() {
        return Err(Error::UniformityMismatch {
            expected: host.r(),
            found: pattern.r(),
        });
    }
    let r = host.r();
    let host_edges: Vec<u32> = host.edges().iter().flatten().copied().collect();
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(CopyIndex::build(host.n(), r, host_edges, pattern.n(), pattern.edge_count(), Vec::new()));
    }
    let covered: HashSet<u32> = pattern.edges().iter().flatten().copied().collect();
    let keep_vertices = covered.len() < pattern.n();
    let plan = HyperPlan::new(pattern);
    let adj = two_section(host);
    let deg = incidence_degrees(host);
    let mut seen: HashSet<Copy> = HashSet::new();
    let mut image = vec![0u32; pattern.n()];
    let mut scratch = Vec::with_capacity(r);
    let _ = plan.for_each_embedding(host, &adj, &deg, &mut |m| {
        for (pos, &h) in m.iter().enumerate() {
            image[plan.vertex_at(pos) as usize] = h;
        }
        let mut edges: Vec<u32> = pattern
            .edges()
            .iter()
            .map(|e| {
                scratch.clear();
                scratch.extend(e.iter().map(|&v| image[v as usize]));
                scratch.sort_unstable();
                host.edge_id(&scratch).expect("embedding preserves edges") as u32
            })
            .collect();
        edges.sort_unstable();
        let mut vertices: Vec<u32> = if keep_vertices {
            image.clone()
        } else {
            edges
                .iter()
                .flat_map(|&e| host.edges()[e as usize].iter().copied())
                .collect()
        };
        vertices.sort_unstable();
        vertices.dedup();
        seen.insert(Copy { edges, vertices });
        ControlFlow::Continue(())
    });
    Ok(CopyIndex::build(
        host.n(),
        r,
        host_edges,
        pattern.n(),
        pattern.edge_count(),
        seen.into_iter().collect(),
    ))
}

/// Dispatches on the host/pattern kind.
pub fn enumerate_structure(host: &Structure, pattern: &Structure) -> Result<CopyIndex> {
    match (host, pattern) {
        (Structure::Graph(h), Structure::Graph(p)) => enumerate_copies(h, p),
        (h, p) => {
            if h.uniformity() != p.uniformity() {
                return Err(Error::UniformityMismatch {
                    expected: h.uniformity(),
                    found: p.uniformity(),
                });
            }
            enumerate_hyper_copies(&h.as_hypergraph(), &p.as_hypergraph())
        }
    }
}

/// Host vertices of some copy of `pattern`, or `None` when the host is pattern-free.
pub fn find_copy(host: &Graph, pattern: &Graph) -> Result<Option<Vec<u32>>> {
    if pattern.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    if pattern.n() > host.n() {
        return Ok(None);
    }
    let plan = GraphPlan::new(pattern, &[]);
    let mut found = None;
    let _ = plan.for_each_embedding(host, &[], &mut |m| {
        let mut image = vec![0u32; m.len()];
        for (pos, &h) in m.iter().enumerate() {
            image[plan.vertex_at(pos) as usize] = h;
        }
        found = Some(image);
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Edge counts inside a vertex subset `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSetStats {
    pub k_set: Vec<u32>,
    /// Host edges inside `K`.
    pub x_k: usize,
    /// Host edges inside `K` covered by a copy of the pattern.
    pub y_k: usize,
    /// Host edges inside `K` covered by a copy of the pattern or any family member.
    pub y_prime_k: Option<usize>,
}

pub(crate) fn membership(n: usize, k_set: &[u32]) -> Result<(Vec<bool>, Vec<u32>)> {
    let mut inside = vec![false; n];
    for &v in k_set {
        if v as usize >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v as u64,
                n,
            });
        }
        inside[v as usize] = true;
    }
    let mut sorted = k_set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok((inside, sorted))
}

/// `X_K`, `Y_K` and, when `family` is given, `Y'_K` over `index` and every family member.
pub fn k_set_stats(index: &CopyIndex, k_set: &[u32], family: Option<&[CopyIndex]>) -> Result<KSetStats> {
    let (inside, k_sorted) = membership(index.n, k_set)?;
    if let Some(fam) = family {
        if fam.iter().any(|f| !index.same_host(f)) {
            return Err(Error::HostMismatch);
        }
    }
    let mut x_k = 0;
    let mut y_k = 0;
    let mut y_prime = 0;
    for e in 0..index.host_edge_count() {
        if index.host_edge(e).iter().all(|&v| inside[v as usize]) {
            x_k += 1;
            let covered = index.is_covered(e);
            y_k += usize::from(covered);
            if let Some(fam) = family {
                y_prime += usize::from(covered || fam.iter().any(|f| f.is_covered(e)));
            }
        }
    }
    Ok(KSetStats {
        k_set: k_sorted,
        x_k,
        y_k,
        y_prime_k: family.map(|_| y_prime),
    })
}

/// Total copy count and per-vertex copy counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalCopyStats {
    pub y: usize,
    pub y_v: Vec<usize>,
}

impl GlobalCopyStats {
    pub fn max_y_v(&self) -> usize {
        self.y_v.iter().copied().max().unwrap_or(0)
    }
}

pub fn global_copy_stats(index: &CopyIndex) -> GlobalCopyStats {
    let mut y_v = vec![0; index.n];
    for copy in &index.copies {
        for &v in &copy.vertices {
            y_v[v as usize] += 1;
        }
    }
    GlobalCopyStats {
        y: index.copies.len(),
        y_v,
    }
}
