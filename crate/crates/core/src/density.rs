//! Exact 2-density and r-density, strict balancedness, and balanced cores.
//!
//! For an `r`-uniform `F` the density term is `(e_F - 1) / (v_F - r)` when
//! `v_F >= r + 1`, `1 / r` when `F` is a single edge on `r` vertices, and `0`
//! otherwise. The maximum over all `F ⊆ H` is attained by an induced
//! subhypergraph (adding edges on a fixed vertex set only raises the term),
//! so the search runs over vertex subsets.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Structure, UniformHypergraph};

/// Largest pattern handled by the subset search.
pub const MAX_PATTERN_VERTICES: usize = 20;

/// An exact reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("`{s}` is not a rational"));
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Density term of one vertex subset, as an unreduced small fraction.
#[derive(Clone, Copy, Debug)]
struct Term {
    num: i64,
    den: i64,
}

impl Term {
    fn of(vertices: usize, edges: usize, r: usize) -> Term {
        if vertices > r {
            Term {
                num: edges as i64 - 1,
                den: (vertices - r) as i64,
            }
        } else if vertices == r && edges == 1 {
            Term { num: 1, den: r as i64 }
        } else {
            Term { num: 0, den: 1 }
        }
    }

    fn cmp(self, other: Term) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }

    fn to_rational(self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    /// `m_r(H)` as an exact fraction.
    pub value: Rational,
    /// Floating approximation of `value`, for display only.
    pub approx: f64,
    /// A vertex subset whose induced subgraph attains the maximum.
    pub witness: Vec<u32>,
    pub strictly_balanced: bool,
    pub uniformity: usize,
}

/// Bitmask view of a small pattern.
struct MaskPattern {
    v: usize,
    r: usize,
    edges: Vec<u32>,
}

impl MaskPattern {
    fn new(h: &UniformHypergraph) -> Result<Self> {
        if h.edge_count() == 0 {
            return Err(Error::Edgeless);
        }
        if h.n() > MAX_PATTERN_VERTICES {
            return Err(Error::PatternTooLarge(format!(
                "{} vertices exceed the density search limit of {MAX_PATTERN_VERTICES}",
                h.n()
            )));
        }
        let edges = h
            .edges()
            .iter()
            .map(|e| e.iter().fold(0u32, |m, &v| m | (1 << v)))
            .collect();
        Ok(MaskPattern {
            v: h.n(),
            r: h.r(),
            edges,
        })
    }

    /// Induced edge count for every subset mask.
    fn edge_counts(&self) -> Vec<u16> {
        // Sum over supersets of each edge mask via a zeta transform.
        let mut counts = vec![0u16; 1 << self.v];
        for &e in &self.edges {
            counts[e as usize] += 1;
        }
        for bit in 0..self.v {
            for mask in 0..counts.len() {
                if mask & (1 << bit) != 0 {
                    counts[mask] += counts[mask ^ (1 << bit)];
                }
            }
        }
        counts
    }

    fn full(&self) -> usize {
        (1usize << self.v) - 1
    }
}

fn mask_to_vertices(mask: usize) -> Vec<u32> {
    (0..usize::BITS)
        .filter(|&b| mask & (1 << b) != 0)
        .collect()
}

/// Vertex subsets ordered by size, then lexicographically on their sorted vertices.
fn masks_in_order(v: usize) -> Vec<usize> {
    // Among equal-size sets, the lexicographically smaller vertex list owns
    // the lowest differing bit, i.e. has the larger bit-reversed mask.
    let mut masks: Vec<usize> = (0..1usize << v).collect();
    masks.sort_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
    masks
}

/// Maximum term over subsets, with the first maximiser in canonical order.
fn max_term(p: &MaskPattern, counts: &[u16], order: &[usize]) -> (Term, usize) {
    let mut best = (Term { num: 0, den: 1 }, 0usize);
    for &mask in order {
        let t = Term::of(mask.count_ones() as usize, counts[mask] as usize, p.r);
        if t.cmp(best.0) == Ordering::Greater {
            best = (t, mask);
        }
    }
    best
}

fn report_for(h: &UniformHypergraph) -> Result<DensityReport> {
    let p = MaskPattern::new(h)?;
    let counts = p.edge_counts();
    let order = masks_in_order(p.v);
    let (best, witness) = max_term(&p, &counts, &order);
    let full = p.full();

    // Proper vertex-induced subgraphs: every subset except the full one.
    let induced_ok = order.iter().filter(|&&m| m != full).all(|&m| {
        Term::of(m.count_ones() as usize, counts[m] as usize, p.r).cmp(best) == Ordering::Less
    });
    // Proper spanning subgraphs H - e, evaluated explicitly.
    let spanning_ok = induced_ok
        && p.edges.iter().all(|&e| {
            let mut max = Term { num: 0, den: 1 };
            for &m in &order {
                let drop = usize::from(m & e as usize == e as usize);
                let t = Term::of(m.count_ones() as usize, counts[m] as usize - drop, p.r);
                if t.cmp(max) == Ordering::Greater {
                    max = t;
                }
            }
            max.cmp(best) == Ordering::Less
        });

    let value = best.to_rational();
    Ok(DensityReport {
        approx: value.to_f64(),
        value,
        witness: mask_to_vertices(witness),
        strictly_balanced: induced_ok && spanning_ok,
        uniformity: p.r,
    })
}

/// `m_2(H)` with witness and strict-balancedness verdict.
pub fn m2_report(h: &Graph) -> Result<DensityReport> {
    report_for(&h.to_hypergraph())
}

/// `m_r(H)` for an `r`-uniform hypergraph.
pub fn mr_report(h: &UniformHypergraph) -> Result<DensityReport> {
    report_for(h)
}

pub fn density_report(h: &Structure) -> Result<DensityReport> {
    match h {
        Structure::Graph(g) => m2_report(g),
        Structure::Hypergraph(hg) => mr_report(hg),
    }
}

/// An edge-minimal strictly 2-balanced subgraph with the same `m_2`.
///
/// Returns `H` unchanged when it is already strictly 2-balanced. Otherwise
/// the candidates are the induced subgraphs on maximising vertex subsets
/// (a strictly balanced `F` with `m_2(F) = m_2(H)` is necessarily induced on
/// its vertex set); the one with the fewest edges wins, ties broken by the
/// lexicographic order of its edge list in `H`'s labels. The result is
/// relabelled to `0..v` in increasing order of the original vertices.
pub fn minimal_balanced_core(h: &Graph) -> Result<Graph> {
    Ok(minimal_balanced_core_with_vertices(h)?.0)
}

/// As [`minimal_balanced_core`], also returning the original vertex labels.
pub fn minimal_balanced_core_with_vertices(h: &Graph) -> Result<(Graph, Vec<u32>)> {
    let report = m2_report(h)?;
    if report.strictly_balanced {
        return Ok((h.clone(), (0..h.n() as u32).collect()));
    }
    let hyper = h.to_hypergraph();
    let p = MaskPattern::new(&hyper)?;
    let counts = p.edge_counts();
    let target = Term {
        num: report.value.numer().to_i64().expect("small"),
        den: report.value.denom().to_i64().expect("small"),
    };

    // Ties on density break by fewest edges, then lexicographically smallest edge list.
    type Candidate = (usize, Vec<(u32, u32)>, Vec<u32>);
    let mut best: Option<Candidate> = None;
    for (mask, &count) in counts.iter().enumerate() {
        let size = mask.count_ones() as usize;
        let t = Term::of(size, count as usize, 2);
        if t.cmp(target) != Ordering::Equal {
            continue;
        }
        let vertices = mask_to_vertices(mask);
        let edges: Vec<(u32, u32)> = h
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| mask & (1 << u) != 0 && mask & (1 << v) != 0)
            .collect();
        let key = (edges.len(), edges);
        let better = match &best {
            None => true,
            Some((n, e, _)) => (key.0, &key.1) < (*n, e),
        };
        if better {
            best = Some((key.0, key.1, vertices));
        }
    }
    let (_, _, vertices) = best.expect("the maximiser itself qualifies");
    let core = h.induced(&vertices);
    let check = m2_report(&core)?;
    debug_assert!(check.strictly_balanced && check.value == report.value);
    if !check.strictly_balanced {
        return Err(Error::NotStrictlyBalanced {
            r: 2,
            detail: format!("core on {vertices:?} failed the balance check"),
        });
    }
    Ok((core, vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_pattern;

    fn m2(h: &Graph) -> Rational {
        m2_report(h).unwrap().value
    }

    #[test]
    fn named_values() {
        assert_eq!(m2(&Graph::complete(2)), Rational::new(1, 2));
        assert_eq!(m2(&Graph::complete(3)), Rational::new(2, 1));
        assert_eq!(m2(&Graph::complete(5)), Rational::new(3, 1));
        assert_eq!(m2(&Graph::cycle(5).unwrap()), Rational::new(4, 3));
        assert_eq!(m2(&Graph::cycle(4).unwrap()), Rational::new(3, 2));
    }

    #[test]
    fn clique_exponent_matches_online_bound() {
        // 1 + m2(K_s) = (s + 3) / 2
        for s in 3..=7i64 {
            let v = m2(&Graph::complete(s as usize));
            assert_eq!(v, Rational::new(s + 1, 2));
        }
    }

    #[test]
    fn edgeless_is_rejected() {
        assert!(matches!(m2_report(&Graph::empty(4)), Err(Error::Edgeless)));
        assert!(matches!(minimal_balanced_core(&Graph::empty(2)), Err(Error::Edgeless)));
        let h = UniformHypergraph::from_edges(3, 3, Vec::<Vec<u32>>::new()).unwrap();
        assert!(matches!(mr_report(&h), Err(Error::Edgeless)));
    }

    #[test]
    fn balancedness_of_small_patterns() {
        let sb = |name: &str| {
            let Structure::Graph(g) = named_pattern(name).unwrap() else { unreachable!() };
            m2_report(&g).unwrap().strictly_balanced
        };
        assert!(sb("K2"));
        assert!(sb("K3"));
        assert!(sb("K4"));
        assert!(sb("C4"));
        assert!(sb("C5"));
        assert!(sb("P3"));
        assert!(sb("K2,2,2"));
        // K_{1,3} ties with its P3 subgraph at density 1.
        assert!(!sb("K1,3"));
        assert!(!sb("P4"));
        // A trailing isolated vertex breaks strictness.
        let k3_plus = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!m2_report(&k3_plus).unwrap().strictly_balanced);
    }

    #[test]
    fn hypergraph_values() {
        let single = UniformHypergraph::from_edges(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let rep = mr_report(&single).unwrap();
        assert_eq!(rep.value, Rational::new(1, 3));
        assert!(rep.strictly_balanced);
        let k43 = UniformHypergraph::complete(4, 3).unwrap();
        let rep = mr_report(&k43).unwrap();
        assert_eq!(rep.value, Rational::new(3, 1));
        assert!(rep.strictly_balanced);
        let s2 = named_pattern("S2^3").unwrap().as_hypergraph();
        let rep = mr_report(&s2).unwrap();
        assert_eq!(rep.value, Rational::new(1, 1));
        assert!(rep.strictly_balanced);
    }

    #[test]
    fn mr_on_two_uniform_matches_m2() {
        let g = Graph::complete(3);
        assert_eq!(mr_report(&g.to_hypergraph()).unwrap(), m2_report(&g).unwrap());
    }

    #[test]
    fn witness_attains_value() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let rep = m2_report(&g).unwrap();
        assert_eq!(rep.value, Rational::new(2, 1));
        assert_eq!(rep.witness, vec![0, 1, 2]);
        assert!(!rep.strictly_balanced);
    }

    #[test]
    fn cores() {
        let k4 = Graph::complete(4);
        assert_eq!(minimal_balanced_core(&k4).unwrap(), k4);
        let pendant = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(minimal_balanced_core(&pendant).unwrap(), Graph::complete(3));
        let two = Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let (core, vertices) = minimal_balanced_core_with_vertices(&two).unwrap();
        assert_eq!(core, Graph::complete(3));
        assert_eq!(vertices, vec![0, 1, 2]);
        let star = Graph::complete_multipartite(&[1, 3]);
        let (core, vertices) = minimal_balanced_core_with_vertices(&star).unwrap();
        assert_eq!(core, Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap());
        assert_eq!(vertices, vec![0, 1, 2]);
    }

    #[test]
    fn rational_text_round_trip() {
        let r: Rational = "8/6".parse().unwrap();
        assert_eq!(r, Rational::new(4, 3));
        assert_eq!(r.to_string(), "4/3");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"4/3\"");
        assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
        assert!("1/0".parse::<Rational>().is_err());
    }
}
