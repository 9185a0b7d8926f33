//! Edge counts inside `k`-sets of the binomial random (hyper)graph, and
//! global copy counts.

use std::cmp::Reverse;
use std::time::Instant;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::{binomial, frequency, mean, run_trials, PlotPoint, Report, Resolved};
use crate::error::{Error, Result};
use crate::graph::Structure;
use crate::random::{sample_gnp, sample_uniform_hypergraph, RandomSource, Stream};
use crate::subgraph::{enumerate_structure, global_copy_stats, k_set_stats, CopyIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KPolicy {
    Uniform,
    Adversarial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KRecord {
    pub policy: KPolicy,
    pub x_k: usize,
    pub y_k: usize,
    /// Coverage by any family member, in family mode.
    pub y_prime_k: Option<usize>,
    /// `Y_K` of each pattern separately, in family mode.
    pub member_y_k: Vec<usize>,
    /// `y_k <= delta C(k, r) p`.
    pub y_ok: bool,
    /// `x_k >= (1 - delta) C(k, r) p`.
    pub x_ok: bool,
    /// `y_prime_k <= delta C(k, r) p`.
    pub y_prime_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// `n < k`: there are no `k`-sets.
    pub vacuous: bool,
    pub host_edges: usize,
    pub copies: usize,
    pub max_y_v: usize,
    pub delta_h: usize,
    pub k_sets: Vec<KRecord>,
    pub all_y_ok: bool,
    pub all_x_ok: bool,
    pub all_y_prime_ok: Option<bool>,
    pub runtime_ms: f64,
}

impl TrialRecord {
    /// Recomputes every threshold flag from the raw counts.
    pub fn audit(&self, run: &Resolved) -> bool {
        let (y_thr, x_thr) = (run.y_threshold(), run.x_threshold());
        let per_k = self.k_sets.iter().all(|k| {
            k.y_ok == (k.y_k as f64 <= y_thr)
                && k.x_ok == (k.x_k as f64 >= x_thr)
                && k.y_prime_ok == k.y_prime_k.map(|y| y as f64 <= y_thr)
        });
        let fam = run.family_mode();
        per_k
            && self.all_y_ok == self.k_sets.iter().all(|k| k.y_ok)
            && self.all_x_ok == self.k_sets.iter().all(|k| k.x_ok)
            && self.all_y_prime_ok == fam.then(|| self.k_sets.iter().all(|k| k.y_prime_ok == Some(true)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationSummary {
    pub params: super::ExperimentParams,
    pub derived: super::Derivation,
    pub k_policy: String,
    pub y_threshold: f64,
    pub x_threshold: f64,
    pub vacuous_trials: usize,
    /// Fraction of trials where every sampled `K` has `Y_K` below threshold.
    pub freq_all_y_ok: f64,
    pub freq_all_x_ok: f64,
    pub freq_all_y_prime_ok: Option<f64>,
    pub mean_x_k: f64,
    pub mean_y_k: f64,
    pub max_y_k: usize,
    pub mean_y_prime_k: Option<f64>,
    /// Sampled `K` where `Y'_K` fell below some member's `Y_K`.
    pub family_coverage_violations: usize,
    pub audit_failures: usize,
}

fn sample_host(run: &Resolved, rng: &mut Stream) -> Result<Structure> {
    let (n, r, p) = (run.derived.n, run.params.r, run.derived.p);
    if r == 2 {
        Ok(Structure::Graph(sample_gnp(n, p, rng)?))
    } else {
        Ok(Structure::Hypergraph(sample_uniform_hypergraph(n, r, p, rng)?))
    }
}

/// `k`-sets grown greedily from the most covered edges: each step adds the
/// vertex completing the most covered edges, then the most edges, then the
/// smallest label.
pub fn adversarial_k_sets(index: &CopyIndex, k: usize, count: usize) -> Vec<Vec<u32>> {
    let n = index.host_n();
    let m = index.host_edge_count();
    if k > n || count == 0 {
        return Vec::new();
    }
    let mut incidence = vec![Vec::new(); n];
    for e in 0..m {
        for &v in index.host_edge(e) {
            incidence[v as usize].push(e);
        }
    }
    let mut seeds: Vec<usize> = (0..m).collect();
    seeds.sort_by_key(|&e| (Reverse(index.coverage(e).len()), e));
    let mut out = Vec::new();
    for &seed in seeds.iter().take(count) {
        let mut grower = Grower {
            index,
            incidence: &incidence,
            inside: vec![false; n],
            outside: vec![index.uniformity(); m],
            gain: vec![(0, 0); n],
            members: Vec::with_capacity(k),
        };
        for &v in index.host_edge(seed) {
            if grower.members.len() < k {
                grower.add(v);
            }
        }
        while grower.members.len() < k {
            let next = (0..n as u32)
                .filter(|&v| !grower.inside[v as usize])
                .max_by_key(|&v| (grower.gain[v as usize], Reverse(v)))
                .expect("k <= n");
            grower.add(next);
        }
        let mut members = grower.members;
        members.sort_unstable();
        out.push(members);
    }
    out
}

struct Grower<'a> {
    index: &'a CopyIndex,
    incidence: &'a [Vec<usize>],
    inside: Vec<bool>,
    /// Vertices of each host edge not yet in the set.
    outside: Vec<usize>,
    /// (covered edges, edges) each outside vertex would complete.
    gain: Vec<(usize, usize)>,
    members: Vec<u32>,
}

impl Grower<'_> {
    fn add(&mut self, v: u32) {
        self.inside[v as usize] = true;
        self.members.push(v);
        for &e in &self.incidence[v as usize] {
            self.outside[e] -= 1;
            if self.outside[e] == 1 {
                let w = *self
                    .index
                    .host_edge(e)
                    .iter()
                    .find(|&&w| !self.inside[w as usize])
                    .expect("one vertex outside");
                self.gain[w as usize].1 += 1;
                if self.index.is_covered(e) {
                    self.gain[w as usize].0 += 1;
                }
            }
        }
    }
}

struct Sampled {
    record: TrialRecord,
    x_sum: f64,
    y_sum: f64,
    y_prime_sum: f64,
    coverage_violations: usize,
}

fn concentration_trial(run: &Resolved, t: usize) -> Result<Sampled> {
    let start = Instant::now();
    let source = RandomSource::new(run.params.seed);
    let mut rng = source.stream("concentration", t as u64);
    let host = sample_host(run, &mut rng)?;
    let indices = run
        .patterns
        .iter()
        .map(|h| enumerate_structure(&host, h))
        .collect::<Result<Vec<CopyIndex>>>()?;
    let primary = &indices[0];
    let family = run.family_mode().then(|| &indices[1..]);
    let global = global_copy_stats(primary);
    let (n, k) = (run.derived.n, run.params.k);
    let vacuous = n < k;
    let mut sets: Vec<(KPolicy, Vec<u32>)> = Vec::new();
    if !vacuous {
        for _ in 0..run.params.k_samples {
            let s = sample(&mut rng, n, k).into_iter().map(|v| v as u32).collect();
            sets.push((KPolicy::Uniform, s));
        }
        for s in adversarial_k_sets(primary, k, run.params.adversarial) {
            sets.push((KPolicy::Adversarial, s));
        }
    }
    let (y_thr, x_thr) = (run.y_threshold(), run.x_threshold());
    let mut k_sets = Vec::with_capacity(sets.len());
    let (mut x_sum, mut y_sum, mut y_prime_sum, mut coverage_violations) = (0.0, 0.0, 0.0, 0);
    for (policy, set) in sets {
        let stats = k_set_stats(primary, &set, family)?;
        let member_y_k = if family.is_some() {
            indices
                .iter()
                .map(|idx| k_set_stats(idx, &set, None).map(|s| s.y_k))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        if let Some(yp) = stats.y_prime_k {
            if member_y_k.iter().any(|&y| y > yp) {
                coverage_violations += 1;
            }
            y_prime_sum += yp as f64;
        }
        x_sum += stats.x_k as f64;
        y_sum += stats.y_k as f64;
        k_sets.push(KRecord {
            policy,
            x_k: stats.x_k,
            y_k: stats.y_k,
            y_prime_k: stats.y_prime_k,
            member_y_k,
            y_ok: stats.y_k as f64 <= y_thr,
            x_ok: stats.x_k as f64 >= x_thr,
            y_prime_ok: stats.y_prime_k.map(|y| y as f64 <= y_thr),
        });
    }
    let record = TrialRecord {
        trial: t,
        vacuous,
        host_edges: host.edge_count(),
        copies: global.y,
        max_y_v: global.max_y_v(),
        delta_h: primary.delta(),
        all_y_ok: k_sets.iter().all(|k| k.y_ok),
        all_x_ok: k_sets.iter().all(|k| k.x_ok),
        all_y_prime_ok: run
            .family_mode()
            .then(|| k_sets.iter().all(|k| k.y_prime_ok == Some(true))),
        k_sets,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(Sampled {
        record,
        x_sum,
        y_sum,
        y_prime_sum,
        coverage_violations,
    })
}

/// Samples `trials` hosts and evaluates `X_K`, `Y_K` (and `Y'_K`) on uniform
/// and adversarial `k`-sets. Trials with `n < k` are vacuous and count as
/// satisfied.
pub fn run_concentration_experiment(run: &Resolved) -> Result<Report<TrialRecord, ConcentrationSummary>> {
    let n = run.derived.n;
    let expected_edges = binomial(n, run.params.r) * run.derived.p;
    if expected_edges > 5e7 {
        return Err(Error::Sizing(format!(
            "n = {n} gives about {expected_edges:.3e} expected edges per trial; reduce c or k"
        )));
    }
    let sampled = run_trials(run.params.trials, |t| concentration_trial(run, t))?;
    let count: usize = sampled.iter().map(|s| s.record.k_sets.len()).sum();
    let per_k = |sum: f64| if count == 0 { 0.0 } else { sum / count as f64 };
    let records: Vec<TrialRecord> = sampled.iter().map(|s| s.record.clone()).collect();
    let summary = ConcentrationSummary {
        params: run.params.clone(),
        derived: run.derived.clone(),
        k_policy: format!(
            "{} uniform k-sets and {} adversarial k-sets grown from the most covered edges per trial",
            run.params.k_samples, run.params.adversarial
        ),
        y_threshold: run.y_threshold(),
        x_threshold: run.x_threshold(),
        vacuous_trials: records.iter().filter(|r| r.vacuous).count(),
        freq_all_y_ok: frequency(records.iter().map(|r| r.all_y_ok)),
        freq_all_x_ok: frequency(records.iter().map(|r| r.all_x_ok)),
        freq_all_y_prime_ok: run
            .family_mode()
            .then(|| frequency(records.iter().map(|r| r.all_y_prime_ok == Some(true)))),
        mean_x_k: per_k(sampled.iter().map(|s| s.x_sum).sum()),
        mean_y_k: per_k(sampled.iter().map(|s| s.y_sum).sum()),
        max_y_k: records
            .iter()
            .flat_map(|r| r.k_sets.iter().map(|k| k.y_k))
            .max()
            .unwrap_or(0),
        mean_y_prime_k: run
            .family_mode()
            .then(|| per_k(sampled.iter().map(|s| s.y_prime_sum).sum())),
        family_coverage_violations: sampled.iter().map(|s| s.coverage_violations).sum(),
        audit_failures: records.iter().filter(|r| !r.audit(run)).count(),
    };
    let c = run.params.small_c;
    let mut plot = vec![
        PlotPoint {
            series: "freq_all_y_ok".into(),
            x: c,
            y: summary.freq_all_y_ok,
        },
        PlotPoint {
            series: "freq_all_x_ok".into(),
            x: c,
            y: summary.freq_all_x_ok,
        },
    ];
    if let Some(f) = summary.freq_all_y_prime_ok {
        plot.push(PlotPoint {
            series: "freq_all_y_prime_ok".into(),
            x: c,
            y: f,
        });
    }
    Ok(Report {
        records,
        summary,
        plot,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma5Record {
    pub trial: usize,
    pub host_edges: usize,
    pub y: usize,
    pub max_y_v: usize,
    /// `sum_v Y_v == v_H Y`.
    pub identity_holds: bool,
    /// `max_v Y_v <= delta n p`.
    pub y_v_ok: bool,
    /// `Y <= delta C(n, 2) p`.
    pub y_ok: bool,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma5Summary {
    pub params: super::ExperimentParams,
    pub derived: super::Derivation,
    pub y_v_threshold: f64,
    pub y_threshold: f64,
    pub identity_violations: usize,
    pub freq_y_v_ok: f64,
    pub freq_y_ok: f64,
    pub mean_y: f64,
    pub mean_max_y_v: f64,
}

/// Global copy count `Y` and per-vertex counts `Y_v` for graph patterns with `m_2 > 1`.
pub fn run_lemma5_experiment(run: &Resolved) -> Result<Report<Lemma5Record, Lemma5Summary>> {
    let Structure::Graph(h) = run.pattern() else {
        return Err(Error::InvalidParameter("the degree experiment needs a graph pattern".into()));
    };
    if run.derived.exponent <= crate::density::Rational::new(1, 1) {
        return Err(Error::InvalidParameter(format!(
            "the degree experiment needs m_2(H) > 1 (got {})",
            run.derived.exponent
        )));
    }
    let (n, p, delta) = (run.derived.n, run.derived.p, run.params.delta);
    let y_v_threshold = delta * n as f64 * p;
    let y_threshold = delta * binomial(n, 2) * p;
    let v_h = h.n();
    let records = run_trials(run.params.trials, |t| {
        let start = Instant::now();
        let mut rng = RandomSource::new(run.params.seed).stream("lemma5", t as u64);
        let g = sample_gnp(n, p, &mut rng)?;
        let index = crate::subgraph::enumerate_copies(&g, h)?;
        let stats = global_copy_stats(&index);
        Ok(Lemma5Record {
            trial: t,
            host_edges: g.edge_count(),
            y: stats.y,
            max_y_v: stats.max_y_v(),
            identity_holds: stats.y_v.iter().sum::<usize>() == v_h * stats.y,
            y_v_ok: stats.max_y_v() as f64 <= y_v_threshold,
            y_ok: stats.y as f64 <= y_threshold,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    })?;
    let summary = Lemma5Summary {
        params: run.params.clone(),
        derived: run.derived.clone(),
        y_v_threshold,
        y_threshold,
        identity_violations: records.iter().filter(|r| !r.identity_holds).count(),
        freq_y_v_ok: frequency(records.iter().map(|r| r.y_v_ok)),
        freq_y_ok: frequency(records.iter().map(|r| r.y_ok)),
        mean_y: mean(records.iter().map(|r| r.y as f64)),
        mean_max_y_v: mean(records.iter().map(|r| r.max_y_v as f64)),
    };
    let c = run.params.small_c;
    let plot = vec![
        PlotPoint {
            series: "freq_y_v_ok".into(),
            x: c,
            y: summary.freq_y_v_ok,
        },
        PlotPoint {
            series: "freq_y_ok".into(),
            x: c,
            y: summary.freq_y_ok,
        },
    ];
    Ok(Report {
        records,
        summary,
        plot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::ExperimentParams;
    use crate::graph::Graph;
    use crate::subgraph::enumerate_copies;

    fn params(k: usize, big_c: f64, small_c: f64, trials: usize) -> ExperimentParams {
        ExperimentParams {
            k,
            big_c,
            small_c,
            trials,
            k_samples: 10,
            adversarial: 2,
            ..ExperimentParams::default()
        }
    }

    #[test]
    fn adversarial_sets_start_from_covered_edges() {
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (1, 2), (2, 3), (4, 5)]).unwrap();
        let idx = enumerate_copies(&g, &Graph::complete(3)).unwrap();
        let sets = adversarial_k_sets(&idx, 3, 2);
        assert_eq!(sets[0], vec![0, 1, 2]);
        assert_eq!(sets.len(), 2);
        assert!(adversarial_k_sets(&idx, 8, 1).is_empty());
    }

    #[test]
    fn concentration_is_deterministic_and_audited() {
        let run = params(8, 2.0, 1.0, 6).resolve().unwrap();
        let a = run_concentration_experiment(&run).unwrap();
        let b = run_concentration_experiment(&run).unwrap();
        assert_eq!(a.summary, b.summary);
        assert_eq!(a.summary.audit_failures, 0);
        assert!(a.records.iter().all(|r| r.k_sets.len() == 12));
    }

    #[test]
    fn vacuous_when_n_below_k() {
        let run = params(40, 4.0, 0.2, 3).resolve().unwrap();
        assert_eq!(run.derived.n, 23);
        let rep = run_concentration_experiment(&run).unwrap();
        assert_eq!(rep.summary.vacuous_trials, 3);
        assert_eq!(rep.summary.freq_all_y_ok, 1.0);
    }

    #[test]
    fn lemma5_identity() {
        let run = params(12, 3.0, 1.0, 5).resolve().unwrap();
        let rep = run_lemma5_experiment(&run).unwrap();
        assert_eq!(rep.summary.identity_violations, 0);
        let mut bad = params(12, 3.0, 1.0, 1);
        bad.pattern = "P3".into();
        assert!(run_lemma5_experiment(&bad.resolve().unwrap()).is_err());
    }
}
