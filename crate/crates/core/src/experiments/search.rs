//! Grid search for graphs certifying `R(H, k) > n`.

use serde::{Deserialize, Serialize};

use super::derive_parameters;
use crate::alteration::{ramsey_certificate, refined_alteration, Verdict};
use crate::error::Result;
use crate::graph::{Graph, Structure};
use crate::random::{sample_gnp, RandomSource};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k: usize,
    pub big_c: Vec<f64>,
    pub small_c: Vec<f64>,
    /// Trials at each grid point.
    pub trials: usize,
    pub seed: u64,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub big_c: f64,
    pub small_c: f64,
    pub n: usize,
    pub p: f64,
    pub certified: usize,
    pub undetermined: usize,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub big_c: f64,
    pub small_c: f64,
    pub trial: usize,
    pub alpha: usize,
    pub graph: Graph,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub config: SearchConfig,
    pub grid: Vec<GridResult>,
    /// Certified witness with the most vertices; the first one found on ties.
    pub best: Option<Witness>,
}

/// Samples `G(n, p)` at every `(C, c)` grid point, applies the refined
/// alteration and keeps graphs with no copy of `h` and independence number below `k`.
///
/// Trial `t` uses substream `t` at every grid point, so points are paired.
pub fn run_ramsey_search(h: &Graph, config: &SearchConfig) -> Result<SearchSummary> {
    let pattern = [Structure::Graph(h.clone())];
    let source = RandomSource::new(config.seed);
    let mut grid = Vec::new();
    let mut best: Option<Witness> = None;
    for &big_c in &config.big_c {
        for &small_c in &config.small_c {
            let d = derive_parameters(&pattern, false, 2, config.k, big_c, small_c)?;
            let outcomes = super::run_trials(config.trials, |t| {
                let mut rng = source.stream("ramsey-search", t as u64);
                let g = sample_gnp(d.n, d.p, &mut rng)?;
                let altered = refined_alteration(&g, h)?.output;
                let cert = ramsey_certificate(&altered, h, config.k, config.budget)?;
                Ok((cert, altered))
            })?;
            let mut result = GridResult {
                big_c,
                small_c,
                n: d.n,
                p: d.p,
                certified: 0,
                undetermined: 0,
                trials: config.trials,
            };
            for (t, (cert, graph)) in outcomes.into_iter().enumerate() {
                match cert.verdict {
                    Verdict::Certified => {
                        result.certified += 1;
                        if best.as_ref().is_none_or(|b| d.n > b.n) {
                            best = Some(Witness {
                                n: d.n,
                                big_c,
                                small_c,
                                trial: t,
                                alpha: cert.independence.map_or(0, |i| i.lower),
                                graph,
                            });
                        }
                    }
                    Verdict::Undetermined => result.undetermined += 1,
                    Verdict::NotCertified => {}
                }
            }
            grid.push(result);
        }
    }
    Ok(SearchSummary {
        config: config.clone(),
        grid,
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamped_p_never_certifies_large_n() {
        let k3 = Graph::complete(3);
        // p clamps to 1; the altered graph is empty, so alpha = n >= 3 for n >= 3.
        let config = SearchConfig {
            k: 3,
            big_c: vec![10.0],
            small_c: vec![1.0],
            trials: 3,
            seed: 1,
            budget: 1_000_000,
        };
        let s = run_ramsey_search(&k3, &config).unwrap();
        assert!(s.grid[0].n >= 3 && s.grid[0].p == 1.0);
        assert_eq!(s.grid[0].certified, 0);
        assert!(s.best.is_none());
    }

    #[test]
    fn rejects_small_k() {
        let config = SearchConfig {
            k: 2,
            big_c: vec![1.0],
            small_c: vec![1.0],
            trials: 1,
            seed: 1,
            budget: 1_000,
        };
        assert!(run_ramsey_search(&Graph::complete(3), &config).is_err());
    }
}
