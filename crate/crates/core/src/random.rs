//! Reproducible randomness and the binomial random (hyper)graph models.
//!
//! A [`RandomSource`] turns one 64-bit master seed into independent ChaCha8
//! substreams addressed by `(tag, index)`. The key is derived from the seed
//! and tag; the index selects the ChaCha stream. Substreams can therefore be
//! created in any order, on any thread, without sequential draws.
//!
//! Edges are drawn in a fixed order (colex order on pairs, lexicographic on
//! `r`-subsets), one `u64` per potential edge, converted to a uniform label in
//! `[0, 1)`. An edge is present iff its label is below `p`. Consequences:
//! `G(n, p)` for `p <= p'` are nested, and `G(n', p)` for `n' <= n` is the
//! induced subgraph of `G(n, p)` on the first `n'` vertices.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Combinations, Graph, UniformHypergraph};

/// A single-consumer random substream.
pub type Stream = ChaCha8Rng;

/// Master seed plus deterministic substream derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSource {
    seed: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self, tag: &str, index: u64) -> Stream {
        let mut state = self.seed ^ fnv1a64(tag.as_bytes()).rotate_left(17);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(index);
        rng
    }
}

pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform in `[0, 1)` from the top 53 bits.
#[inline]
pub fn unit_from_u64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
pub fn next_unit(rng: &mut dyn RngCore) -> f64 {
    unit_from_u64(rng.next_u64())
}

pub fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Rank of the pair `{u, v}` in colex order; independent of the vertex count.
#[inline]
pub fn pair_rank(u: u32, v: u32) -> u64 {
    let (a, b) = if u < v { (u as u64, v as u64) } else { (v as u64, u as u64) };
    b * (b - 1) / 2 + a
}

/// Samples `G(n, p)`. Consumes exactly `n(n-1)/2` values from `rng`.
pub fn sample_gnp(n: usize, p: f64, rng: &mut Stream) -> Result<Graph> {
    check_probability(p)?;
    let mut edges = Vec::new();
    for v in 1..n as u32 {
        for u in 0..v {
            if unit_from_u64(rng.next_u64()) < p {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(n, edges))
}

/// Samples the binomial `r`-uniform hypergraph. Consumes `C(n, r)` values.
pub fn sample_uniform_hypergraph(
    n: usize,
    r: usize,
    p: f64,
    rng: &mut Stream,
) -> Result<UniformHypergraph> {
    if r < 2 || n < r {
        return Err(Error::Sizing(format!(
            "binomial hypergraph needs r >= 2 and n >= r (n={n}, r={r})"
        )));
    }
    check_probability(p)?;
    let edges = Combinations::new(n, r)
        .filter(|_| unit_from_u64(rng.next_u64()) < p)
        .collect();
    Ok(UniformHypergraph::from_sorted_unique(n, r, edges))
}

/// Uniform labels for every pair of an `n`-vertex ground set.
///
/// Labels are read on demand from a snapshot of the stream at the position
/// where [`sample_gnp`] would have started, so a label never changes once
/// observed and the table never stores `n^2` values.
#[derive(Clone, Debug)]
pub struct EdgeLabelTable {
    n: usize,
    origin: Stream,
    origin_word: u128,
}

/// Snapshots `rng` as a label table and advances it past the `C(n, 2)` labels.
pub fn derive_labels(n: usize, rng: &mut Stream) -> EdgeLabelTable {
    let origin = rng.clone();
    let origin_word = rng.get_word_pos();
    let pairs = (n as u128) * (n as u128).saturating_sub(1) / 2;
    rng.set_word_pos(origin_word + 2 * pairs);
    EdgeLabelTable {
        n,
        origin,
        origin_word,
    }
}

impl EdgeLabelTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, u: u32, v: u32) -> f64 {
        assert!(u != v && (u as usize) < self.n && (v as usize) < self.n, "pair out of range");
        let mut rng = self.origin.clone();
        rng.set_word_pos(self.origin_word + 2 * pair_rank(u, v) as u128);
        unit_from_u64(rng.next_u64())
    }

    /// The graph `{e : label(e) < p}`; identical to `sample_gnp` on the same stream.
    pub fn threshold(&self, p: f64) -> Result<Graph> {
        let mut rng = self.origin.clone();
        sample_gnp(self.n, p, &mut rng)
    }

    /// All labels in colex pair order.
    pub fn labels(&self) -> Vec<f64> {
        let mut rng = self.origin.clone();
        let pairs = self.n * self.n.saturating_sub(1) / 2;
        (0..pairs).map(|_| unit_from_u64(rng.next_u64())).collect()
    }
}
