//! Parameter derivation and seeded Monte Carlo drivers.
//!
//! Every trial owns the substream `(tag, trial index)` of the master seed, so
//! results do not depend on how trials are scheduled across workers. The
//! worker count comes from `ALTERATION_LAB_WORKERS` (default: all cores).
//! `log` is the natural logarithm throughout.

pub mod concentration;
pub mod games;
pub mod search;
pub mod tail;
pub mod witness;

use std::fs;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{density_report, Rational};
use crate::error::{Error, Result};
use crate::graph::{load_pattern, Structure};

pub use concentration::{run_concentration_experiment, run_lemma5_experiment};
pub use games::{run_builder_experiment, run_rps_experiment};
pub use search::run_ramsey_search;
pub use tail::run_tail_check;
pub use witness::{planted_witness, run_appendix_witness, witness_for_parts};


pub const WORKERS_ENV: &str = "ALTERATION_LAB_WORKERS";

/// User-facing experiment inputs. Unset fields take the defaults below.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentParams {
    /// Named pattern or path to a pattern file.
    pub pattern: String,
    /// Additional patterns; when nonempty the pattern and these form the family.
    pub family: Vec<String>,
    pub r: usize,
    pub k: usize,
    #[serde(rename = "C")]
    pub big_c: f64,
    #[serde(rename = "c")]
    pub small_c: f64,
    pub delta: f64,
    pub trials: usize,
    pub k_samples: usize,
    /// Greedily grown high-coverage K-sets per trial.
    pub adversarial: usize,
    pub seed: u64,
}

impl Default for ExperimentParams {
    fn default() -> Self {
        ExperimentParams {
            pattern: "K3".into(),
            family: Vec::new(),
            r: 2,
            k: 40,
            big_c: 4.0,
            small_c: 0.2,
            delta: 0.5,
            trials: 200,
            k_samples: 50,
            adversarial: 5,
            seed: 1,
        }
    }
}

/// Quantities computed from the inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Derivation {
    /// `m_r(H)`, or the minimum over the family.
    pub exponent: Rational,
    pub n: usize,
    pub p: f64,
    pub p_clamped: bool,
}

/// `n = floor(c (k^(r-1) / log k)^m)` and `p = min(1, C log k / k^(r-1))`.
///
/// In family mode every pattern must be strictly `r`-balanced and `m` is the
/// smallest density among them.
pub fn derive_parameters(
    patterns: &[Structure],
    family_mode: bool,
    r: usize,
    k: usize,
    big_c: f64,
    small_c: f64,
) -> Result<Derivation> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k must be at least 3 (got {k})")));
    }
    if !(big_c > 0.0 && big_c.is_finite()) || !(small_c > 0.0 && small_c.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "C and c must be positive (got C={big_c}, c={small_c})"
        )));
    }
    if patterns.is_empty() {
        return Err(Error::InvalidParameter("no pattern given".into()));
    }
    let mut exponent: Option<Rational> = None;
    for h in patterns {
        if h.uniformity() != r {
            return Err(Error::UniformityMismatch {
                expected: r,
                found: h.uniformity(),
            });
        }
        let report = density_report(h)?;
        if family_mode && !report.strictly_balanced {
            return Err(Error::NotStrictlyBalanced {
                r,
                detail: format!("family member with {} edges", h.edge_count()),
            });
        }
        exponent = Some(match exponent {
            Some(e) if e <= report.value => e,
            _ => report.value,
        });
    }
    let exponent = exponent.expect("nonempty");
    let ln_k = (k as f64).ln();
    let base = (k as f64).powi(r as i32 - 1) / ln_k;
    let raw_n = small_c * (exponent.to_f64() * base.ln()).exp();
    let n = raw_n.floor() as usize;
    let raw_p = big_c * ln_k / (k as f64).powi(r as i32 - 1);
    let p_clamped = raw_p > 1.0;
    if p_clamped {
        log::warn!("p = C log k / k^(r-1) = {raw_p:.4} exceeds 1; clamped to 1");
    }
    Ok(Derivation {
        exponent,
        n,
        p: raw_p.min(1.0),
        p_clamped,
    })
}

/// Parameters with their patterns loaded and derived quantities attached.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub params: ExperimentParams,
    /// The pattern first, then the family members.
    pub patterns: Vec<Structure>,
    pub derived: Derivation,
}

impl Resolved {
    pub fn family_mode(&self) -> bool {
        self.patterns.len() > 1
    }

    pub fn pattern(&self) -> &Structure {
        &self.patterns[0]
    }

    /// `C(k, r) p`, the expected number of edges inside a `k`-set.
    pub fn expected_inside(&self) -> f64 {
        binomial(self.params.k, self.params.r) * self.derived.p
    }

    pub fn y_threshold(&self) -> f64 {
        self.params.delta * self.expected_inside()
    }

    pub fn x_threshold(&self) -> f64 {
        (1.0 - self.params.delta) * self.expected_inside()
    }
}

impl ExperimentParams {
    pub fn resolve(&self) -> Result<Resolved> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1] (got {})", self.delta)));
        }
        let mut patterns = vec![load_pattern(&self.pattern)?];
        for name in &self.family {
            patterns.push(load_pattern(name)?);
        }
        let derived = derive_parameters(
            &patterns,
            !self.family.is_empty(),
            self.r,
            self.k,
            self.big_c,
            self.small_c,
        )?;
        Ok(Resolved {
            params: self.clone(),
            patterns,
            derived,
        })
    }

    /// Reads a JSON object of parameters.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Runs `trial(i)` for `i` in `0..trials` on the configured worker pool,
/// returning results in trial order.
pub fn run_trials<T, F>(trials: usize, trial: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let workers = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w > 0);
    match workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
            pool.install(|| (0..trials).into_par_iter().map(&trial).collect())
        }
        None => (0..trials).into_par_iter().map(&trial).collect(),
    }
}

/// One point of a plot series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub series: String,
    pub x: f64,
    pub y: f64,
}

/// Records, summary and plot data of one experiment run.
#[derive(Clone, Debug, Serialize)]
pub struct Report<R, S> {
    pub records: Vec<R>,
    pub summary: S,
    pub plot: Vec<PlotPoint>,
}

impl<R: Serialize, S: Serialize> Report<R, S> {
    /// Writes `trials.jsonl`, `summary.json`, `summary.csv` and `plot.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut trials = std::io::BufWriter::new(fs::File::create(dir.join("trials.jsonl"))?);
        for record in &self.records {
            serde_json::to_writer(&mut trials, record)?;
            trials.write_all(b"\n")?;
        }
        trials.flush()?;
        fs::write(dir.join("summary.json"), self.summary_json()? + "\n")?;
        fs::write(dir.join("summary.csv"), self.summary_csv()?)?;
        let mut plot = csv::Writer::from_path(dir.join("plot.csv"))?;
        for point in &self.plot {
            plot.serialize(point)?;
        }
        plot.flush()?;
        Ok(())
    }

    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.summary)?)
    }

    /// Summary flattened to `key,value` rows; nested keys are joined with dots.
    pub fn summary_csv(&self) -> Result<String> {
        key_value_csv(&self.summary)
    }
}

/// Any serializable value flattened to `key,value` rows; nested keys are joined with dots.
pub fn key_value_csv<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let value = serde_json::to_value(value)?;
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"])?;
    for (k, v) in rows {
        w.write_record([k, v])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn flatten(prefix: &str, value: &serde_json::Value, out: &mut Vec<(String, String)>) {
    use serde_json::Value;
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Fraction of `flags` that are true; `1.0` for an empty slice.
pub(crate) fn frequency(flags: impl IntoIterator<Item = bool>) -> f64 {
    let (mut yes, mut all) = (0usize, 0usize);
    for f in flags {
        all += 1;
        yes += usize::from(f);
    }
    if all == 0 {
        1.0
    } else {
        yes as f64 / all as f64
    }
}

pub(crate) fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut count) = (0.0, 0usize);
    for v in values {
        sum += v;
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}
