use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use alteration_lab::alteration::{alter, independence_number, Method, DEFAULT_ALPHA_BUDGET};
use alteration_lab::density::density_report;
use alteration_lab::experiments::games::{BuilderConfig, RpsConfig};
use alteration_lab::experiments::search::SearchConfig;
use alteration_lab::experiments::tail::TailConfig;
use alteration_lab::experiments::{
    key_value_csv, run_appendix_witness, run_builder_experiment, run_concentration_experiment,
    run_lemma5_experiment, run_ramsey_search, run_rps_experiment, run_tail_check, witness_for_parts,
    ExperimentParams, Report, Resolved,
};
use alteration_lab::graph::{load_pattern, Graph, Structure};
use alteration_lab::random::{sample_gnp, RandomSource};
use alteration_lab::subgraph::{
    enumerate_structure, k_set_stats, packing_report, DEFAULT_COPY_CAP, DEFAULT_PACKING_BUDGET,
};
use alteration_lab::{Error, Result};

#[derive(Parser)]
#[command(name = "alteration-lab", version, about = "Random alteration constructions for graph Ramsey lower bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

/// Flags shared by every subcommand. Values given here override `--config`.
#[derive(Args, Clone, Debug)]
struct Common {
    /// Named pattern (K3, C5, P4, K1,3, K4^3, S2^3, ...) or path to a pattern file.
    #[arg(long)]
    pattern: Option<String>,
    /// Extra family members, comma separated.
    #[arg(long, value_delimiter = ',')]
    family: Vec<String>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "C")]
    big_c: Option<f64>,
    #[arg(long = "c")]
    small_c: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    k_samples: Option<usize>,
    /// Greedily grown high-coverage K-sets per trial.
    #[arg(long)]
    adversarial: Option<usize>,
    /// JSON file of experiment parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory receiving trials.jsonl, summary.json, summary.csv and plot.csv.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Exact m_2 or m_r of the pattern and its family members.
    Density {
        #[command(flatten)]
        common: Common,
    },
    /// Copies of the pattern in a host; with --k-set also the K-set statistics.
    Copies {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        host: String,
        #[arg(long, value_delimiter = ',')]
        k_set: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_COPY_CAP)]
        cap: usize,
    },
    /// Alters a host (a file, or G(n, p) when --host is absent) into a pattern-free graph.
    Alter {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        host: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = Method::Refined)]
        method: Method,
    },
    /// Independence number of a host graph.
    Alpha {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        host: String,
        #[arg(long, default_value_t = DEFAULT_ALPHA_BUDGET)]
        budget: u64,
    },
    /// Edge counts inside sampled k-sets of G(n, p).
    Concentration {
        #[command(flatten)]
        common: Common,
    },
    /// Global and per-vertex covered-edge counts.
    Lemma5 {
        #[command(flatten)]
        common: Common,
    },
    /// Upper tail of the largest edge-disjoint family of present copies.
    Tail {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        k_size: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, value_delimiter = ',')]
        grid: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_COPY_CAP)]
        cap: usize,
    },
    /// Planted complete multipartite witness.
    Witness {
        #[command(flatten)]
        common: Common,
        /// Count copies for this part size instead of deriving it.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Searches for graphs certifying R(H, k) > n.
    RamseySearch {
        #[command(flatten)]
        common: Common,
        #[arg(long = "C-grid", value_delimiter = ',')]
        big_c_grid: Vec<f64>,
        #[arg(long = "c-grid", value_delimiter = ',')]
        small_c_grid: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_ALPHA_BUDGET)]
        budget: u64,
    },
    /// Ramsey, Paper, Scissors games against a random decider.
    Rps {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value = "random-legal")]
        proposer: String,
        #[arg(long, default_value = "random")]
        decider: String,
        #[arg(long, default_value_t = DEFAULT_ALPHA_BUDGET)]
        budget: u64,
    },
    /// Online Ramsey games against the threshold painter.
    BuilderGame {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value = "pump")]
        builder: String,
    },
}

impl Common {
    fn params(&self) -> Result<ExperimentParams> {
        let mut params = match &self.config {
            Some(path) => ExperimentParams::from_json(&std::fs::read_to_string(path)?)?,
            None => ExperimentParams::default(),
        };
        if let Some(v) = &self.pattern {
            params.pattern = v.clone();
        }
        if !self.family.is_empty() {
            params.family = self.family.clone();
        }
        macro_rules! apply {
            ($($field:ident => $target:ident),*) => {$(
                if let Some(v) = self.$field {
                    params.$target = v;
                }
            )*};
        }
        apply!(r => r, k => k, big_c => big_c, small_c => small_c, delta => delta,
            trials => trials, seed => seed, k_samples => k_samples, adversarial => adversarial);
        Ok(params)
    }

    fn resolve(&self) -> Result<Resolved> {
        self.params()?.resolve()
    }

    fn emit<T: Serialize>(&self, value: &T) -> Result<()> {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
            Format::Csv => print!("{}", key_value_csv(value)?),
        }
        Ok(())
    }

    fn emit_report<R: Serialize, S: Serialize>(&self, report: &Report<R, S>) -> Result<()> {
        if let Some(dir) = &self.out {
            report.write(dir)?;
            log::info!("wrote {} trial records to {}", report.records.len(), dir.display());
        }
        self.emit(&report.summary)
    }
}

fn graph_pattern(spec: &str) -> Result<Graph> {
    match load_pattern(spec)? {
        Structure::Graph(g) => Ok(g),
        Structure::Hypergraph(h) => Err(Error::UniformityMismatch {
            expected: 2,
            found: h.r(),
        }),
    }
}

fn load_host(spec: &str) -> Result<Structure> {
    if Path::new(spec).exists() {
        Structure::parse(&std::fs::read_to_string(spec)?)
    } else {
        load_pattern(spec)
    }
}

#[derive(Serialize)]
struct NamedDensity {
    pattern: String,
    report: alteration_lab::density::DensityReport,
}

#[derive(Serialize)]
struct CopiesOutput {
    summary: alteration_lab::subgraph::CopySummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_set: Option<alteration_lab::subgraph::KSetStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    packing: Option<alteration_lab::subgraph::PackingReport>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Density { common } => {
            let params = common.params()?;
            let mut reports = Vec::new();
            for name in std::iter::once(&params.pattern).chain(&params.family) {
                reports.push(NamedDensity {
                    pattern: name.clone(),
                    report: density_report(&load_pattern(name)?)?,
                });
            }
            if reports.len() == 1 {
                common.emit(&reports[0].report)
            } else {
                common.emit(&reports)
            }
        }
        Command::Copies {
            common,
            host,
            k_set,
            cap,
        } => {
            let params = common.params()?;
            let index = enumerate_structure(&load_host(&host)?, &load_pattern(&params.pattern)?)?;
            let (k_stats, packing) = if k_set.is_empty() {
                (None, None)
            } else {
                let packing = (index.uniformity() == 2)
                    .then(|| packing_report(&index, &k_set, cap, DEFAULT_PACKING_BUDGET))
                    .transpose()?;
                (Some(k_set_stats(&index, &k_set, None)?), packing)
            };
            common.emit(&CopiesOutput {
                summary: index.summary(),
                k_set: k_stats,
                packing,
            })
        }
        Command::Alter {
            common,
            host,
            n,
            p,
            method,
        } => {
            let params = common.params()?;
            let h = graph_pattern(&params.pattern)?;
            let g = match host {
                Some(spec) => match load_host(&spec)? {
                    Structure::Graph(g) => g,
                    Structure::Hypergraph(_) => return Err(Error::InvalidParameter("host must be a graph".into())),
                },
                None => {
                    let (n, p) = match (n, p) {
                        (Some(n), Some(p)) => (n, p),
                        _ => {
                            let d = params.resolve()?.derived;
                            (n.unwrap_or(d.n), p.unwrap_or(d.p))
                        }
                    };
                    sample_gnp(n, p, &mut RandomSource::new(params.seed).stream("alter", 0))?
                }
            };
            common.emit(&alter(&g, &h, method)?)
        }
        Command::Alpha { common, host, budget } => match load_host(&host)? {
            Structure::Graph(g) => common.emit(&independence_number(&g, budget)),
            Structure::Hypergraph(_) => Err(Error::InvalidParameter("host must be a graph".into())),
        },
        Command::Concentration { common } => common.emit_report(&run_concentration_experiment(&common.resolve()?)?),
        Command::Lemma5 { common } => common.emit_report(&run_lemma5_experiment(&common.resolve()?)?),
        Command::Tail {
            common,
            n,
            k_size,
            p,
            grid,
            cap,
        } => {
            let params = common.params()?;
            let config = TailConfig {
                n,
                k_size,
                p,
                trials: params.trials,
                seed: params.seed,
                grid: (!grid.is_empty()).then_some(grid),
                cap,
            };
            common.emit_report(&run_tail_check(&graph_pattern(&params.pattern)?, &config)?)
        }
        Command::Witness { common, t, n, p } => {
            let params = common.params()?;
            let h = graph_pattern(&params.pattern)?;
            if let Some(t) = t {
                return common.emit(&witness_for_parts(&h, t)?);
            }
            let (n, p) = match (n, p) {
                (Some(n), Some(p)) => (n, p),
                _ => {
                    let d = params.resolve()?.derived;
                    (n.unwrap_or(d.n), p.unwrap_or(d.p))
                }
            };
            common.emit(&run_appendix_witness(&h, params.k, n, p, params.delta)?)
        }
        Command::RamseySearch {
            common,
            big_c_grid,
            small_c_grid,
            budget,
        } => {
            let params = common.params()?;
            let config = SearchConfig {
                k: params.k,
                big_c: if big_c_grid.is_empty() { vec![params.big_c] } else { big_c_grid },
                small_c: if small_c_grid.is_empty() { vec![params.small_c] } else { small_c_grid },
                trials: params.trials,
                seed: params.seed,
                budget,
            };
            let summary = run_ramsey_search(&graph_pattern(&params.pattern)?, &config)?;
            if let Some(dir) = &common.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
                if let Some(best) = &summary.best {
                    std::fs::write(dir.join("witness.txt"), best.graph.to_text())?;
                }
            }
            common.emit(&summary)
        }
        Command::Rps {
            common,
            n,
            p,
            proposer,
            decider,
            budget,
        } => {
            let run = common.resolve()?;
            let config = RpsConfig {
                n: n.unwrap_or(run.derived.n),
                k: run.params.k,
                p: p.unwrap_or(run.derived.p),
                proposer,
                decider,
                trials: run.params.trials,
                seed: run.params.seed,
                budget,
            };
            common.emit_report(&run_rps_experiment(&graph_pattern(&run.params.pattern)?, &config)?)
        }
        Command::BuilderGame { common, n, p, builder } => {
            let run = common.resolve()?;
            let config = BuilderConfig {
                n: n.unwrap_or(run.derived.n),
                k: run.params.k,
                p: p.unwrap_or(run.derived.p),
                builder,
                trials: run.params.trials,
                seed: run.params.seed,
            };
            common.emit_report(&run_builder_experiment(&graph_pattern(&run.params.pattern)?, &config)?)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
