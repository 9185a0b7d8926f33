//! Canonical graph and uniform hypergraph representations.
//!
//! Vertices are the dense integers `0..n`. Graph edges are stored as
//! canonical pairs `(u, v)` with `u < v`, sorted lexicographically; hypergraph
//! edges are sorted `r`-subsets, also kept in lexicographic order. Both types
//! are immutable once built, so edge ids (positions in the sorted edge list)
//! are stable and can be shared across threads.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Read access to a simple graph with sorted neighbour lists.
pub trait AdjacencyView {
    fn vertex_count(&self) -> usize;

    /// Sorted neighbours of `v`.
    fn neighbors(&self, v: u32) -> &[u32];

    fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        if u == v || u as usize >= self.vertex_count() || v as usize >= self.vertex_count() {
            return false;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }
}

#[inline]
pub(crate) fn canonical(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// An immutable simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[u32; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        Graph::from_edges(repr.n, repr.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate pairs and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w as u64,
                        n,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidEdge(format!("loop at vertex {u}")));
            }
            list.push(canonical(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge(format!(
                "duplicate edge {{{}, {}}}",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// Caller guarantees `edges` is sorted, canonical, loop-free and unique.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Like [`Graph::from_edges`] but silently merges duplicate pairs.
    pub(crate) fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut list: Vec<(u32, u32)> = edges.into_iter().map(|(u, v)| canonical(u, v)).collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted_unique(n, list)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Sizing(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let n32 = n as u32;
        Self::from_edges(n, (0..n32).map(|i| (i, (i + 1) % n32)))
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let n32 = n as u32;
        Self::from_edges_dedup(n, (1..n32).map(|i| (i - 1, i)))
    }

    /// Complete multipartite graph with consecutive parts of the given sizes.
    pub fn complete_multipartite(parts: &[usize]) -> Self {
        let n: usize = parts.iter().sum();
        let mut label = Vec::with_capacity(n);
        for (i, &size) in parts.iter().enumerate() {
            label.extend(std::iter::repeat_n(i, size));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if label[u] != label[v] {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges in lexicographic order; the position is the edge id.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_id(&self, u: u32, v: u32) -> Option<usize> {
        self.edges.binary_search(&canonical(u, v)).ok()
    }

    /// Vertices with at least one incident edge.
    pub fn non_isolated(&self) -> Vec<u32> {
        (0..self.n as u32)
            .filter(|&v| !self.adj[v as usize].is_empty())
            .collect()
    }

    /// Induced subgraph on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[u32]) -> Graph {
        let mut pos = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (pos[u as usize], pos[v as usize]);
                (a != u32::MAX && b != u32::MAX).then_some((a, b))
            });
        Graph::from_edges_dedup(vertices.len(), edges)
    }

    /// Same vertex set, edges filtered by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, (u32, u32)) -> bool) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, &e)| keep(i, e))
            .map(|(_, &e)| e)
            .collect();
        Graph::from_sorted_unique(self.n, edges)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n as u32 {
            for v in u + 1..self.n as u32 {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_sorted_unique(self.n, edges)
    }

    /// Union of edge sets on `max(n)` vertices.
    pub fn union(&self, other: &Graph) -> Graph {
        let n = self.n.max(other.n);
        Graph::from_edges_dedup(n, self.edges.iter().chain(other.edges.iter()).copied())
    }

    /// True iff every edge of `self` is an edge of `other`.
    pub fn is_edge_subset_of(&self, other: &Graph) -> bool {
        self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }

    pub fn is_independent(&self, vertices: &[u32]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn to_hypergraph(&self) -> UniformHypergraph {
        UniformHypergraph {
            n: self.n,
            r: 2,
            edges: self.edges.iter().map(|&(u, v)| vec![u, v]).collect(),
        }
    }

    /// Text format: `n m` followed by `m` lines `u v`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = data_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        let header = parse_numbers(line_no, header)?;
        let [n, m] = header[..] else {
            return Err(Error::parse(line_no, "expected header `n m`"));
        };
        let mut edges = Vec::with_capacity(m as usize);
        for _ in 0..m {
            let (line_no, line) = lines
                .next()
                .ok_or_else(|| Error::parse(line_no, format!("expected {m} edge lines")))?;
            let nums = parse_numbers(line_no, line)?;
            let [u, v] = nums[..] else {
                return Err(Error::parse(line_no, "expected `u v`"));
            };
            edges.push((to_u32(line_no, u)?, to_u32(line_no, v)?));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::parse(line_no, "trailing data after edge list"));
        }
        Graph::from_edges(n as usize, edges)
    }
}

impl AdjacencyView for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }
}

/// A mutable simple graph used by the game engines. Edges can only be added.
#[derive(Clone, Debug)]
pub struct GrowingGraph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl GrowingGraph {
    pub fn new(n: usize) -> Self {
        GrowingGraph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Adds isolated vertices until there are at least `n`.
    pub(crate) fn grow_to(&mut self, n: usize) {
        if self.adj.len() < n {
            self.adj.resize_with(n, Vec::new);
        }
    }

    pub(crate) fn insert(&mut self, u: u32, v: u32) -> bool {
        let row = &mut self.adj[u as usize];
        match row.binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                row.insert(i, v);
                let row = &mut self.adj[v as usize];
                let j = row.binary_search(&u).unwrap_err();
                row.insert(j, u);
                self.edge_count += 1;
                true
            }
        }
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.edge_count);
        for (u, row) in self.adj.iter().enumerate() {
            edges.extend(row.iter().filter(|&&v| v as usize > u).map(|&v| (u as u32, v)));
        }
        Graph::from_sorted_unique(self.adj.len(), edges)
    }
}

impl AdjacencyView for GrowingGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }
}

/// An immutable `r`-uniform hypergraph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypergraphRepr", into = "HypergraphRepr")]
pub struct UniformHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    n: usize,
    r: usize,
    edges: Vec<Vec<u32>>,
}

impl TryFrom<HypergraphRepr> for UniformHypergraph {
    type Error = Error;

    fn try_from(repr: HypergraphRepr) -> Result<Self> {
        UniformHypergraph::from_edges(repr.n, repr.r, repr.edges)
    }
}

impl From<UniformHypergraph> for HypergraphRepr {
    fn from(h: UniformHypergraph) -> Self {
        HypergraphRepr {
            n: h.n,
            r: h.r,
            edges: h.edges,
        }
    }
}

impl UniformHypergraph {
    pub fn from_edges(n: usize, r: usize, edges: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::Sizing(format!("uniformity must be at least 2, got {r}")));
        }
        let mut list = Vec::new();
        for mut e in edges {
            if e.len() != r {
                return Err(Error::InvalidEdge(format!(
                    "edge {e:?} has {} vertices, expected {r}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if let Some(&w) = e.iter().find(|&&w| w as usize >= n) {
                return Err(Error::VertexOutOfRange {
                    vertex: w as u64,
                    n,
                });
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge(format!("edge {e:?} repeats a vertex")));
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge(format!("duplicate edge {:?}", w[0])));
        }
        Ok(UniformHypergraph { n, r, edges: list })
    }

    pub(crate) fn from_sorted_unique(n: usize, r: usize, edges: Vec<Vec<u32>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        UniformHypergraph { n, r, edges }
    }

    /// All `r`-subsets of `0..n`.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        if r < 2 || n < r {
            return Err(Error::Sizing(format!(
                "complete {r}-uniform hypergraph needs r >= 2 and n >= r (n={n})"
            )));
        }
        let edges = Combinations::new(n, r).collect();
        Ok(Self::from_sorted_unique(n, r, edges))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge_id(&self, edge: &[u32]) -> Option<usize> {
        self.edges
            .binary_search_by(|e| e.as_slice().cmp(edge))
            .ok()
    }

    /// Converts back to a [`Graph`]; only valid for `r == 2`.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.r != 2 {
            return Err(Error::UniformityMismatch {
                expected: 2,
                found: self.r,
            });
        }
        Ok(Graph::from_sorted_unique(
            self.n,
            self.edges.iter().map(|e| (e[0], e[1])).collect(),
        ))
    }

    /// Text format: `n m r` followed by `m` lines of `r` vertices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.n, self.edges.len(), self.r);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<UniformHypergraph> {
        let mut lines = data_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n m r` header"))?;
        let header = parse_numbers(line_no, header)?;
        let [n, m, r] = header[..] else {
            return Err(Error::parse(line_no, "expected header `n m r`"));
        };
        let mut edges = Vec::with_capacity(m as usize);
        for _ in 0..m {
            let (line_no, line) = lines
                .next()
                .ok_or_else(|| Error::parse(line_no, format!("expected {m} edge lines")))?;
            let nums = parse_numbers(line_no, line)?;
            if nums.len() as u64 != r {
                return Err(Error::parse(line_no, format!("expected {r} vertices")));
            }
            edges.push(
                nums.into_iter()
                    .map(|x| to_u32(line_no, x))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::parse(line_no, "trailing data after edge list"));
        }
        UniformHypergraph::from_edges(n as usize, r as usize, edges)
    }
}

/// Either kind of host or pattern structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Structure {
    Graph(Graph),
    Hypergraph(UniformHypergraph),
}

impl Structure {
    pub fn uniformity(&self) -> usize {
        match self {
            Structure::Graph(_) => 2,
            Structure::Hypergraph(h) => h.r(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Structure::Graph(g) => g.n(),
            Structure::Hypergraph(h) => h.n(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Structure::Graph(g) => g.edge_count(),
            Structure::Hypergraph(h) => h.edge_count(),
        }
    }

    /// Parses either text format (graph `n m` or hypergraph `n m r`) or JSON.
    pub fn parse(text: &str) -> Result<Structure> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let value: serde_json::Value = serde_json::from_str(trimmed)?;
            return if value.get("r").is_some() {
                let h: UniformHypergraph = serde_json::from_value(value)?;
                Ok(Structure::Hypergraph(h))
            } else {
                Ok(Structure::Graph(serde_json::from_value(value)?))
            };
        }
        let mut lines = data_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input"))?;
        match parse_numbers(line_no, header)?.len() {
            2 => Ok(Structure::Graph(Graph::parse_text(text)?)),
            3 => Ok(Structure::Hypergraph(UniformHypergraph::parse_text(text)?)),
            _ => Err(Error::parse(line_no, "expected `n m` or `n m r` header")),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Structure::Graph(g) => g.to_text(),
            Structure::Hypergraph(h) => h.to_text(),
        }
    }

    pub fn as_hypergraph(&self) -> UniformHypergraph {
        match self {
            Structure::Graph(g) => g.to_hypergraph(),
            Structure::Hypergraph(h) => h.clone(),
        }
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

fn to_u32(line_no: usize, x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::parse(line_no, format!("vertex {x} exceeds u32")))
}

/// Lexicographic iterator over the `r`-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<u32>>,
}

impl Combinations {
    pub fn new(n: usize, r: usize) -> Self {
        let current = (r <= n).then(|| (0..r as u32).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let r = out.len();
        let mut next = out.clone();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if (next[i] as usize) < self.n - r + i {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Named patterns: `K<s>`, `C<l>`, `P<v>` (path on v vertices),
/// `K<a>,<b>,...` (complete multipartite), and the 3-uniform `K<v>^<r>`
/// (complete r-uniform) and `S2^<r>` (two r-edges sharing r-1 vertices).
pub fn named_pattern(name: &str) -> Result<Structure> {
    let unknown = || Error::UnknownPattern(name.to_string());
    let name = name.trim();
    if let Some((base, r)) = name.split_once('^') {
        let r: usize = r.parse().map_err(|_| unknown())?;
        if let Some(v) = base.strip_prefix('K') {
            let v: usize = v.parse().map_err(|_| unknown())?;
            return Ok(Structure::Hypergraph(UniformHypergraph::complete(v, r)?));
        }
        if base == "S2" {
            if r < 2 {
                return Err(unknown());
            }
            let mut a: Vec<u32> = (0..r as u32).collect();
            let b = a.clone();
            *a.last_mut().expect("r >= 2") = r as u32;
            return Ok(Structure::Hypergraph(UniformHypergraph::from_edges(
                r + 1,
                r,
                vec![b, a],
            )?));
        }
        return Err(unknown());
    }
    let (kind, rest) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    let rest = rest.trim_start_matches('_').trim_matches(|c| c == '{' || c == '}');
    match kind {
        "K" if rest.contains(',') => {
            let parts = rest
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| unknown()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Structure::Graph(Graph::complete_multipartite(&parts)))
        }
        "K" => Ok(Structure::Graph(Graph::complete(rest.parse().map_err(|_| unknown())?))),
        "C" => Ok(Structure::Graph(Graph::cycle(rest.parse().map_err(|_| unknown())?)?)),
        "P" => Ok(Structure::Graph(Graph::path(rest.parse().map_err(|_| unknown())?))),
        _ => Err(unknown()),
    }
}

/// Resolves a named pattern, falling back to reading a file in either text format.
pub fn load_pattern(spec: &str) -> Result<Structure> {
    match named_pattern(spec) {
        Ok(s) => Ok(s),
        Err(Error::UnknownPattern(_)) if std::path::Path::new(spec).exists() => {
            Structure::parse(&std::fs::read_to_string(spec)?)
        }
        Err(e) => Err(e),
    }
}
