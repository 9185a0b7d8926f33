//! Exact maximum clique by bitset branch and bound with greedy colouring bounds.
//!
//! Used for the independence number (cliques of the complement) and for
//! maximum edge-disjoint packings (independent sets of a conflict graph).

/// Dense symmetric adjacency matrix stored as bit rows.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn get(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Complement without loops.
    pub fn complement(&self) -> BitMatrix {
        let mut out = BitMatrix::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.get(u, v) {
                    out.set(u, v);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueOutcome {
    /// Largest clique found, as vertex indices.
    pub clique: Vec<usize>,
    /// True when the search finished, so `clique` is maximum.
    pub exact: bool,
    /// Certified upper bound on the clique number (equals `clique.len()` when exact).
    pub upper_bound: usize,
    pub nodes: u64,
}

struct Search<'a> {
    adj: &'a BitMatrix,
    words: usize,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
    // Colour of the root vertex being expanded when the search stopped.
    root_color: usize,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p` in index order; returns (vertex, colour) pairs
    /// sorted by non-decreasing colour.
    fn color(&self, p: &[u64]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncolored = p.to_vec();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                clear(&mut uncolored, v);
                clear(&mut q, v);
                for (qw, aw) in q.iter_mut().zip(self.adj.row(v)) {
                    *qw &= !aw;
                }
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Vec<u64>, depth: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let colored = self.color(&p);
        for &(v, c) in colored.iter().rev() {
            if self.current.len() + c <= self.best.len() {
                return;
            }
            if depth == 0 {
                self.root_color = c;
            }
            self.current.push(v);
            let mut next = vec![0u64; self.words];
            let mut any = false;
            for ((nw, pw), aw) in next.iter_mut().zip(&p).zip(self.adj.row(v)) {
                *nw = pw & aw;
                any |= *nw != 0;
            }
            if any {
                self.expand(next, depth + 1);
            } else if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            self.current.pop();
            if self.aborted {
                return;
            }
            clear(&mut p, v);
        }
        if depth == 0 {
            self.root_color = 0;
        }
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear(words: &mut [u64], v: usize) {
    words[v / 64] &= !(1 << (v % 64));
}

/// Maximum clique with at most `budget` node expansions.
pub fn max_clique(adj: &BitMatrix, budget: u64) -> CliqueOutcome {
    let n = adj.n();
    if n == 0 {
        return CliqueOutcome {
            clique: Vec::new(),
            exact: true,
            upper_bound: 0,
            nodes: 0,
        };
    }
    // Relabel by non-increasing degree so colouring visits hubs first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj.degree(v)), v));
    let mut relabeled = BitMatrix::new(n);
    for (i, &u) in order.iter().enumerate() {
        for (j, &v) in order.iter().enumerate().skip(i + 1) {
            if adj.get(u, v) {
                relabeled.set(i, j);
            }
        }
    }
    let mut search = Search {
        adj: &relabeled,
        words: relabeled.words,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
        root_color: 0,
    };
    let mut all = vec![0u64; relabeled.words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let root_bound = search.color(&all).last().map_or(0, |&(_, c)| c);
    search.expand(all, 0);

    let mut clique: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    let exact = !search.aborted;
    let upper_bound = if exact {
        clique.len()
    } else if search.root_color > 0 {
        search.root_color.max(clique.len())
    } else {
        root_bound.max(clique.len())
    };
    CliqueOutcome {
        clique,
        exact,
        upper_bound,
        nodes: search.nodes,
    }
}

/// Maximum independent set of an undirected graph given by adjacency lists,
/// solved component by component. Returns `None` if the budget runs out.
pub fn max_independent_set(adjacency: &[Vec<usize>], budget: u64) -> Option<(Vec<usize>, u64)> {
    let n = adjacency.len();
    let mut component = vec![usize::MAX; n];
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        component[start] = start;
        let mut i = 0;
        while i < members.len() {
            for &w in &adjacency[members[i]] {
                if component[w] == usize::MAX {
                    component[w] = start;
                    members.push(w);
                }
            }
            i += 1;
        }
        if members.len() == 1 {
            chosen.push(start);
            continue;
        }
        members.sort_unstable();
        let mut local = BitMatrix::new(members.len());
        for (i, &u) in members.iter().enumerate() {
            for &w in &adjacency[u] {
                let j = members.binary_search(&w).expect("same component");
                if i < j {
                    local.set(i, j);
                }
            }
        }
        let outcome = max_clique(&local.complement(), budget.saturating_sub(nodes));
        nodes += outcome.nodes;
        if !outcome.exact {
            return None;
        }
        chosen.extend(outcome.clique.iter().map(|&i| members[i]));
    }
    chosen.sort_unstable();
    Some((chosen, nodes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_clique(adj: &BitMatrix) -> usize {
        let n = adj.n();
        (0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|u| {
                    m & (1 << u) == 0 || (u + 1..n).all(|v| m & (1 << v) == 0 || adj.get(u, v))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn matches_brute_force_on_pseudo_random_graphs() {
        let mut state = 0x1234_5678_9abc_def0u64;
        for n in 1..=14 {
            for _ in 0..20 {
                let mut adj = BitMatrix::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        if state % 100 < 55 {
                            adj.set(u, v);
                        }
                    }
                }
                let out = max_clique(&adj, u64::MAX);
                assert!(out.exact);
                assert_eq!(out.clique.len(), brute_clique(&adj));
                for (i, &u) in out.clique.iter().enumerate() {
                    for &v in &out.clique[i + 1..] {
                        assert!(adj.get(u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_keeps_a_valid_bracket() {
        let mut adj = BitMatrix::new(60);
        for u in 0..60 {
            for v in u + 1..60 {
                if (u * 7 + v * 13) % 5 != 0 {
                    adj.set(u, v);
                }
            }
        }
        let full = max_clique(&adj, u64::MAX);
        let cut = max_clique(&adj, 3);
        assert!(!cut.exact);
        assert!(cut.clique.len() <= full.clique.len());
        assert!(cut.upper_bound >= full.clique.len());
    }

    #[test]
    fn independent_set_by_components() {
        // Path 0-1-2 plus an isolated vertex 3 plus edge 4-5.
        let adjacency = vec![vec![1], vec![0, 2], vec![1], vec![], vec![5], vec![4]];
        let (set, _) = max_independent_set(&adjacency, 1_000).unwrap();
        assert_eq!(set.len(), 4);
        assert!(set.contains(&0) && set.contains(&2) && set.contains(&3));
    }
}
