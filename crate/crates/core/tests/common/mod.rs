//! Brute-force oracles shared by the integration test targets. None of them
//! call into the library except to build or read graphs.
#![allow(dead_code)]

use std::collections::HashSet;

use alteration_lab::density::Rational;
use alteration_lab::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adjacency bitmasks, one row per vertex.
pub fn rows(g: &Graph) -> Vec<u64> {
    let mut r = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        r[u as usize] |= 1 << v;
        r[v as usize] |= 1 << u;
    }
    r
}

pub fn from_rows(rows: &[u64]) -> Graph {
    let n = rows.len();
    let mut edges = Vec::new();
    for (u, row) in rows.iter().enumerate() {
        for v in u + 1..n {
            if row >> v & 1 == 1 {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_graph(n: usize, p: f64, rng: &mut TestRng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// All permutations of `items` (Heap's algorithm).
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut a = items.to_vec();
    let mut out = Vec::new();
    heap(a.len(), &mut a, &mut out);
    out
}

/// Isomorphism-invariant code: vertices are first ordered by an invariant,
/// then the lexicographically largest pair bitstring over all orders that
/// respect the invariant classes is taken.
fn canonical_code(rows: &[u64]) -> u64 {
    let n = rows.len();
    let deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let inv: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&w| rows[v] >> w & 1 == 1).map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let cell_perms: Vec<Vec<Vec<usize>>> = cells.iter().map(|c| permutations(c)).collect();
    let mut best = 0u64;
    let mut idx = vec![0usize; cells.len()];
    loop {
        let seq: Vec<usize> = idx
            .iter()
            .enumerate()
            .flat_map(|(c, &i)| cell_perms[c][i].iter().copied())
            .collect();
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                code = code << 1 | (rows[seq[i]] >> seq[j] & 1);
            }
        }
        best = best.max(code);
        let mut c = 0;
        loop {
            if c == cells.len() {
                return best;
            }
            idx[c] += 1;
            if idx[c] < cell_perms[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// Every graph on `n` vertices up to isomorphism, for `0 <= n <= max_n`.
/// Generated by adding a vertex with every neighbourhood to each graph one size down.
pub fn graph_corpus(max_n: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Vec<u64>>> = vec![vec![vec![]]];
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &levels[n - 1] {
            for mask in 0u64..(1 << (n - 1)) {
                let mut r = g.clone();
                for (v, row) in r.iter_mut().enumerate() {
                    *row |= (mask >> v & 1) << (n - 1);
                }
                r.push(mask);
                if seen.insert(canonical_code(&r)) {
                    next.push(r);
                }
            }
        }
        levels.push(next);
    }
    levels.iter().map(|l| l.iter().map(|r| from_rows(r)).collect()).collect()
}

/// Maximum over vertex subsets of `(e - 1)/(v - 2)` with induced edges, and `1/2` for an edge.
pub fn brute_m2(g: &Graph) -> Rational {
    let r = rows(g);
    let n = g.n();
    let mut best = (1i64, 2i64);
    for s in 1u64..(1 << n) {
        let v = s.count_ones() as i64;
        if v < 3 {
            continue;
        }
        let e: i64 = (0..n)
            .filter(|&u| s >> u & 1 == 1)
            .map(|u| (r[u] & s).count_ones() as i64)
            .sum::<i64>()
            / 2;
        if (e - 1) * best.1 > best.0 * (v - 2) {
            best = (e - 1, v - 2);
        }
    }
    Rational::new(best.0, best.1)
}

/// Injective maps `V(h) -> V(g)` sending edges to edges.
pub fn injection_count(g: &Graph, h: &Graph) -> u64 {
    let gr = rows(g);
    let hr = rows(h);
    fn go(i: usize, map: &mut Vec<usize>, used: u64, gr: &[u64], hr: &[u64]) -> u64 {
        if i == hr.len() {
            return 1;
        }
        let mut total = 0;
        for v in 0..gr.len() {
            if used >> v & 1 == 1 {
                continue;
            }
            if (0..i).all(|j| hr[i] >> j & 1 == 0 || gr[v] >> map[j] & 1 == 1) {
                map.push(v);
                total += go(i + 1, map, used | 1 << v, gr, hr);
                map.pop();
            }
        }
        total
    }
    go(0, &mut Vec::new(), 0, &gr, &hr)
}

/// `|Aut(h)|` by trying every vertex permutation.
pub fn automorphisms(h: &Graph) -> u64 {
    let r = rows(h);
    let all: Vec<usize> = (0..h.n()).collect();
    permutations(&all)
        .into_iter()
        .filter(|p| (0..h.n()).all(|u| (0..h.n()).all(|v| (r[u] >> v & 1) == (r[p[u]] >> p[v] & 1))))
        .count() as u64
}

/// Copies of `h` in `g`, where `h` has no isolated vertices.
pub fn oracle_copies(g: &Graph, h: &Graph) -> u64 {
    injection_count(g, h) / automorphisms(h)
}

/// Independence number by subset search.
pub fn brute_alpha(g: &Graph) -> usize {
    let r = rows(g);
    let n = g.n();
    (0u64..(1 << n))
        .filter(|&s| (0..n).all(|u| s >> u & 1 == 0 || r[u] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest clique size by subset search.
pub fn brute_clique(g: &Graph) -> usize {
    let r = rows(g);
    let n = g.n();
    (0u64..(1 << n))
        .filter(|&s| (0..n).all(|u| s >> u & 1 == 0 || (r[u] | 1 << u) & s == s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest pairwise disjoint subfamily, by exhaustive search.
pub fn brute_packing(sets: &[Vec<usize>]) -> usize {
    fn go(i: usize, used: &HashSet<usize>, sets: &[Vec<usize>]) -> usize {
        if i == sets.len() {
            return 0;
        }
        let skip = go(i + 1, used, sets);
        if sets[i].iter().any(|e| used.contains(e)) {
            return skip;
        }
        let mut with = used.clone();
        with.extend(sets[i].iter().copied());
        skip.max(1 + go(i + 1, &with, sets))
    }
    go(0, &HashSet::new(), sets)
}

/// Every triangle-free graph on `n` vertices is checked by the caller; this
/// returns all labelled graphs on `n` vertices.
pub fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .collect();
    (0u64..(1 << pairs.len())).map(move |mask| {
        Graph::from_edges(
            n,
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
        )
        .unwrap()
    })
}

/// Edges of `g` lying in some copy of `h`, found through injections.
pub fn covered_edges(g: &Graph, h: &Graph) -> HashSet<(u32, u32)> {
    let gr = rows(g);
    let hr = rows(h);
    let he: Vec<(usize, usize)> = h.edges().iter().map(|&(a, b)| (a as usize, b as usize)).collect();
    let mut out = HashSet::new();
    fn go(
        i: usize,
        map: &mut Vec<usize>,
        used: u64,
        gr: &[u64],
        hr: &[u64],
        he: &[(usize, usize)],
        out: &mut HashSet<(u32, u32)>,
    ) {
        if i == hr.len() {
            for &(a, b) in he {
                let (u, v) = (map[a].min(map[b]) as u32, map[a].max(map[b]) as u32);
                out.insert((u, v));
            }
            return;
        }
        for v in 0..gr.len() {
            if used >> v & 1 == 0 && (0..i).all(|j| hr[i] >> j & 1 == 0 || gr[v] >> map[j] & 1 == 1) {
                map.push(v);
                go(i + 1, map, used | 1 << v, gr, hr, he, out);
                map.pop();
            }
        }
    }
    go(0, &mut Vec::new(), 0, &gr, &hr, &he, &mut out);
    out
}
