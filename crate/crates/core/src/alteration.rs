//! Alteration procedures that turn a host graph into an `H`-free subgraph,
//! plus exact independence numbers and Ramsey witness certificates.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clique::{max_clique, BitMatrix};
use crate::error::{Error, Result};
use crate::graph::{Graph, GrowingGraph};
use crate::subgraph::{enumerate_copies, find_copy, Copy, EdgeCompletion};

pub const DEFAULT_ALPHA_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Delete every edge lying in some copy.
    Refined,
    /// Scan edges in order, rejecting any edge that completes a copy.
    Greedy,
    /// Delete the edges of an inclusion-maximal edge-disjoint family of copies.
    Krivelevich,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Refined => "refined",
            Method::Greedy => "greedy",
            Method::Krivelevich => "krivelevich",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "refined" => Ok(Method::Refined),
            "greedy" => Ok(Method::Greedy),
            "krivelevich" => Ok(Method::Krivelevich),
            other => Err(Error::InvalidParameter(format!("unknown alteration method `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlterationResult {
    pub method: Method,
    pub input: Graph,
    pub output: Graph,
    /// Removed edges, sorted.
    pub removed: Vec<(u32, u32)>,
    /// The edge-disjoint family, for the krivelevich method.
    pub collection: Option<Vec<Copy>>,
}

fn finish(method: Method, g: &Graph, keep: &[bool], collection: Option<Vec<Copy>>) -> AlterationResult {
    let output = g.filter_edges(|id, _| keep[id]);
    let removed = g
        .edges()
        .iter()
        .zip(keep)
        .filter(|(_, &k)| !k)
        .map(|(&e, _)| e)
        .collect();
    AlterationResult {
        method,
        input: g.clone(),
        output,
        removed,
        collection,
    }
}

pub fn refined_alteration(g: &Graph, h: &Graph) -> Result<AlterationResult> {
    let index = enumerate_copies(g, h)?;
    let keep: Vec<bool> = (0..g.edge_count()).map(|e| !index.is_covered(e)).collect();
    Ok(finish(Method::Refined, g, &keep, None))
}

/// Greedy alteration along `order`, which must list every edge of `g` exactly once.
pub fn greedy_alteration(g: &Graph, h: &Graph, order: &[(u32, u32)]) -> Result<AlterationResult> {
    if h.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    if order.len() != g.edge_count() {
        return Err(Error::InvalidOrder(format!(
            "order has {} pairs but the graph has {} edges",
            order.len(),
            g.edge_count()
        )));
    }
    let mut ids = Vec::with_capacity(order.len());
    let mut seen = HashSet::with_capacity(order.len());
    for &(u, v) in order {
        let id = g
            .edge_id(u, v)
            .ok_or_else(|| Error::InvalidOrder(format!("{{{u}, {v}}} is not an edge")))?;
        if !seen.insert(id) {
            return Err(Error::InvalidOrder(format!("{{{u}, {v}}} is listed twice")));
        }
        ids.push(id);
    }
    let check = EdgeCompletion::new(h);
    let mut accepted = GrowingGraph::new(g.n());
    let mut keep = vec![false; g.edge_count()];
    for id in ids {
        let (u, v) = g.edges()[id];
        if !check.completes(&accepted, u, v) {
            accepted.insert(u, v);
            keep[id] = true;
        }
    }
    Ok(finish(Method::Greedy, g, &keep, None))
}

/// Greedy alteration in lexicographic edge order.
pub fn greedy_alteration_lex(g: &Graph, h: &Graph) -> Result<AlterationResult> {
    greedy_alteration(g, h, g.edges())
}

pub fn krivelevich_alteration(g: &Graph, h: &Graph) -> Result<AlterationResult> {
    let index = enumerate_copies(g, h)?;
    let mut keep = vec![true; g.edge_count()];
    let mut collection = Vec::new();
    for copy in index.copies() {
        if copy.edges.iter().all(|&e| keep[e as usize]) {
            for &e in &copy.edges {
                keep[e as usize] = false;
            }
            collection.push(copy.clone());
        }
    }
    Ok(finish(Method::Krivelevich, g, &keep, Some(collection)))
}

/// Runs `method`; the greedy method uses lexicographic order.
pub fn alter(g: &Graph, h: &Graph, method: Method) -> Result<AlterationResult> {
    match method {
        Method::Refined => refined_alteration(g, h),
        Method::Greedy => greedy_alteration_lex(g, h),
        Method::Krivelevich => krivelevich_alteration(g, h),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceResult {
    /// Size of `witness`; equals the independence number when `exact`.
    pub lower: usize,
    /// Certified upper bound on the independence number.
    pub upper: usize,
    /// An independent set, sorted.
    pub witness: Vec<u32>,
    pub exact: bool,
    pub nodes: u64,
}

impl IndependenceResult {
    pub fn alpha(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Independence number via maximum clique of the complement, with at most
/// `budget` branch-and-bound node expansions.
pub fn independence_number(g: &Graph, budget: u64) -> IndependenceResult {
    let mut adj = BitMatrix::new(g.n());
    for &(u, v) in g.edges() {
        adj.set(u as usize, v as usize);
    }
    let out = max_clique(&adj.complement(), budget);
    IndependenceResult {
        lower: out.clique.len(),
        upper: out.upper_bound,
        witness: out.clique.iter().map(|&v| v as u32).collect(),
        exact: out.exact,
        nodes: out.nodes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// `H`-free with independence number below `k`.
    Certified,
    NotCertified,
    /// Independence search ran out of budget with `lower < k <= upper`.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyCertificate {
    pub verdict: Verdict,
    pub k: usize,
    /// Vertices of a pattern copy, indexed by pattern vertex, when one exists.
    pub copy: Option<Vec<u32>>,
    pub independence: Option<IndependenceResult>,
}

impl RamseyCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Decides whether `g` witnesses `R(H, k) > n`: no copy of `h` and no independent `k`-set.
pub fn ramsey_certificate(g: &Graph, h: &Graph, k: usize, budget: u64) -> Result<RamseyCertificate> {
    if let Some(copy) = find_copy(g, h)? {
        return Ok(RamseyCertificate {
            verdict: Verdict::NotCertified,
            k,
            copy: Some(copy),
            independence: None,
        });
    }
    let ind = independence_number(g, budget);
    let verdict = if ind.upper < k {
        Verdict::Certified
    } else if ind.lower >= k {
        Verdict::NotCertified
    } else {
        Verdict::Undetermined
    };
    Ok(RamseyCertificate {
        verdict,
        k,
        copy: None,
        independence: Some(ind),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::complete(3)
    }

    #[test]
    fn refined_examples() {
        let r = refined_alteration(&Graph::complete(4), &k3()).unwrap();
        assert_eq!((r.output.edge_count(), r.removed.len()), (0, 6));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(refined_alteration(&c5, &k3()).unwrap().output, c5);
        let pendant = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let r = refined_alteration(&pendant, &k3()).unwrap();
        assert_eq!(r.output.edges(), &[(2, 3)]);
        assert_eq!(r.removed.len(), 3);
    }

    #[test]
    fn greedy_examples() {
        let r = greedy_alteration_lex(&Graph::complete(4), &k3()).unwrap();
        assert_eq!(r.output.edges(), &[(0, 1), (0, 2), (0, 3)]);
        let order = [(1, 2), (0, 2), (0, 1)];
        let r = greedy_alteration(&k3(), &k3(), &order).unwrap();
        assert_eq!(r.output.edges(), &[(0, 2), (1, 2)]);
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(greedy_alteration_lex(&c5, &k3()).unwrap().output, c5);
    }

    #[test]
    fn greedy_rejects_bad_orders() {
        let g = k3();
        assert!(matches!(greedy_alteration(&g, &g, &[(0, 1), (0, 2)]), Err(Error::InvalidOrder(_))));
        assert!(matches!(
            greedy_alteration(&g, &g, &[(0, 1), (1, 0), (0, 2)]),
            Err(Error::InvalidOrder(_))
        ));
        let path = Graph::path(3);
        assert!(matches!(greedy_alteration(&path, &g, &[(0, 1), (0, 2)]), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn krivelevich_examples() {
        let r = krivelevich_alteration(&Graph::complete(4), &k3()).unwrap();
        assert_eq!(r.collection.as_ref().unwrap().len(), 1);
        assert_eq!(r.removed.len(), 3);
        assert_eq!(r.output.edges(), &[(0, 3), (1, 3), (2, 3)]);
        let refined = refined_alteration(&Graph::complete(4), &k3()).unwrap();
        assert!(refined.output.is_edge_subset_of(&r.output));
        let c5 = Graph::cycle(5).unwrap();
        let r = krivelevich_alteration(&c5, &k3()).unwrap();
        assert!(r.collection.unwrap().is_empty());
        assert_eq!(r.output, c5);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(independence_number(&Graph::complete(6), 1000).alpha(), Some(1));
        assert_eq!(independence_number(&Graph::empty(7), 1000).alpha(), Some(7));
        assert_eq!(independence_number(&Graph::cycle(5).unwrap(), 1000).alpha(), Some(2));
        assert_eq!(independence_number(&Graph::empty(0), 1000).alpha(), Some(0));
    }

    #[test]
    fn certificates() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(ramsey_certificate(&c5, &k3(), 3, 1000).unwrap().is_certified());
        let r = ramsey_certificate(&k3(), &k3(), 10, 1000).unwrap();
        assert_eq!(r.verdict, Verdict::NotCertified);
        assert!(r.copy.is_some());
        let r = ramsey_certificate(&Graph::empty(5), &k3(), 3, 1000).unwrap();
        assert_eq!(r.verdict, Verdict::NotCertified);
        assert_eq!(r.independence.unwrap().lower, 5);
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::Refined, Method::Greedy, Method::Krivelevich] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
