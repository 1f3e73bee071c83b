use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use domlab::generators::{
    enumerate_cubic_connected, gadget_chain, named_graph, random_connected_cubic, random_cubic, to_graph6_lines,
    CorpusSpec,
};
use domlab::graph::{parse_graph6, to_graph6, Graph};
use domlab::harness::{
    render_report, run_check, run_sweep, Cache, CheckKind, CheckRequest, HarnessError, PropertyId, RunConfig,
};
use domlab::machinery::{MachineryError, PeelPolicy};
use domlab::solvers::{gamma_exact, i_exact, reed_bound, SolveBudget, SolveError};

#[derive(Parser)]
#[command(name = "domlab", version, about = "Domination experiments on cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    /// Graph6 input file, or `-` for stdin.
    #[arg(long)]
    input: Option<String>,
    /// Search-node cap per solver call.
    #[arg(long, default_value_t = 200_000_000)]
    budget_nodes: u64,
    /// Wall-clock cap per solver call.
    #[arg(long, default_value_t = 300)]
    budget_seconds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Findings cache (JSONL).
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, default_value = "deg3")]
    peel_policy: PeelPolicy,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl Common {
    fn budget(&self) -> SolveBudget {
        SolveBudget {
            node_limit: self.budget_nodes,
            time_limit: Duration::from_secs(self.budget_seconds),
        }
    }

    /// Graphs named on the command line, else graph6 lines from `--input`
    /// (stdin when absent).
    fn graphs(&self, inline: &[String]) -> Result<Vec<Graph>> {
        if !inline.is_empty() {
            return inline.iter().map(|s| resolve_graph(s)).collect();
        }
        let text = match self.input.as_deref() {
            None | Some("-") => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            }
            Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        };
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| parse_graph6(l).with_context(|| format!("parsing graph6 {l:?}")))
            .collect()
    }
}

/// A fixture name (`k4`, `petersen`, `c6`, ...) or a graph6 string.
fn resolve_graph(s: &str) -> Result<Graph> {
    if let Ok(g) = named_graph(s) {
        return Ok(g);
    }
    parse_graph6(s).with_context(|| format!("{s:?} is neither a fixture name nor valid graph6"))
}

fn parse_edge(t: &str) -> Result<(usize, usize), String> {
    let (a, b) = t
        .split_once('-')
        .ok_or_else(|| format!("bad edge {t:?}, expected u-v"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad edge {t:?}"));
    Ok((p(a)?, p(b)?))
}

#[derive(Subcommand)]
enum Command {
    /// Print γ, i, the ⌈n/3⌉ bound and both certificates.
    Solve {
        /// Graph6 strings or fixture names; otherwise read `--input`.
        graphs: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Check properties over a corpus and emit findings as JSONL.
    Sweep {
        /// Corpus: exhaustive:MIN-MAX, random:N:COUNT[:connected],
        /// named:NAME[,NAME...], gadget:K. Repeatable. Defaults to `--input`.
        #[arg(long)]
        corpus: Vec<String>,
        /// Comma-separated property ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        properties: Vec<PropertyId>,
        /// Load the whole run configuration from JSON instead.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write findings here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit graphs as graph6 lines.
    Gen {
        #[arg(value_enum)]
        mode: GenMode,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        /// Random mode: only connected graphs.
        #[arg(long)]
        connected: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run one checker on one graph and print its verdict and trace.
    Check {
        /// lemma, claim, independentize, fact-u-literal, fact-t-dominating,
        /// fact-t-dset, peel, theorem or reduce.
        kind: CheckKind,
        /// Graph6 string or fixture name; otherwise the first line of `--input`.
        graph: Option<String>,
        /// Comma-separated vertex set (X or Y).
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<usize>>,
        /// Comma-separated replacement set S.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<usize>>,
        /// Comma-separated edges `u-v` for the literal U-probe.
        #[arg(long, value_delimiter = ',', value_parser = parse_edge)]
        u: Option<Vec<(usize, usize)>>,
        #[command(flatten)]
        common: Common,
    },
    /// Summarize a findings cache as Markdown (or JSON) and optional CSV files.
    Report {
        /// Directory for summary.csv, graphs.csv and gaps.csv.
        #[arg(long)]
        csv_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenMode {
    Exhaustive,
    Random,
    Named,
    Gadget,
}

fn parse_corpus(s: &str, seed: u64) -> Result<CorpusSpec> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    Ok(match kind {
        "exhaustive" => {
            let (lo, hi) = rest.split_once('-').unwrap_or((rest, rest));
            CorpusSpec::Exhaustive {
                min_n: lo.parse().context("exhaustive:MIN-MAX")?,
                max_n: hi.parse().context("exhaustive:MIN-MAX")?,
            }
        }
        "random" => {
            let parts: Vec<&str> = rest.split(':').collect();
            let (n, count) = match parts[..] {
                [n, c] | [n, c, _] => (
                    n.parse().context("random:N:COUNT")?,
                    c.parse().context("random:N:COUNT")?,
                ),
                _ => bail!("expected random:N:COUNT[:connected]"),
            };
            CorpusSpec::Random {
                n,
                count,
                seed,
                connected: parts.get(2) == Some(&"connected"),
            }
        }
        "named" => CorpusSpec::Named {
            names: rest.split(',').map(String::from).collect(),
        },
        "gadget" => CorpusSpec::GadgetChain {
            k: rest.parse().context("gadget:K")?,
        },
        other => bail!("unknown corpus kind {other:?}"),
    })
}

fn emit(out: &str) -> Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(out.as_bytes())?;
    stdout.flush()?;
    Ok(())
}

fn solve(graphs: &[String], common: &Common) -> Result<ExitCode> {
    let budget = common.budget();
    let mut out = String::new();
    for g in common.graphs(graphs)? {
        let gamma = gamma_exact(&g, &budget)?;
        let i = i_exact(&g, &budget)?;
        let bound = reed_bound(g.n());
        match common.format {
            Format::Json => {
                let v = json!({
                    "graph6": to_graph6(&g),
                    "n": g.n(),
                    "gamma": gamma.size(),
                    "i": i.size(),
                    "bound": bound,
                    "gamma_set": gamma.to_vec(),
                    "i_set": i.to_vec(),
                    "within_bound": gamma.size() <= bound,
                });
                out.push_str(&(v.to_string() + "\n"));
            }
            Format::Text => {
                out.push_str(&format!(
                    "{} n={} gamma={} i={} bound={} gamma_set={:?} i_set={:?}\n",
                    to_graph6(&g),
                    g.n(),
                    gamma.size(),
                    i.size(),
                    bound,
                    gamma.to_vec(),
                    i.to_vec()
                ));
            }
        }
    }
    emit(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn sweep(
    corpus: &[String],
    properties: &[PropertyId],
    config: Option<&PathBuf>,
    output: Option<&PathBuf>,
    common: &Common,
) -> Result<ExitCode> {
    let config = match config {
        Some(path) => {
            let mut c: RunConfig = serde_json::from_str(&fs::read_to_string(path)?).context("parsing run config")?;
            c.workers = common.workers;
            c
        }
        None => {
            let corpus = if corpus.is_empty() {
                CorpusSpec::Graphs {
                    graph6: common.graphs(&[])?.iter().map(to_graph6).collect(),
                }
            } else {
                let mut parts = corpus
                    .iter()
                    .map(|s| parse_corpus(s, common.seed))
                    .collect::<Result<Vec<_>>>()?;
                if parts.len() == 1 {
                    parts.remove(0)
                } else {
                    CorpusSpec::Union { parts }
                }
            };
            let props = if properties.is_empty() {
                PropertyId::ALL.to_vec()
            } else {
                properties.to_vec()
            };
            RunConfig {
                corpus,
                properties: props,
                budget_nodes: common.budget_nodes,
                budget_seconds: common.budget_seconds,
                peel_policy: common.peel_policy,
                seed: common.seed,
                workers: common.workers,
            }
        }
    };
    let mut cache = match &common.cache {
        Some(p) => Cache::open(p)?,
        None => Cache::in_memory(),
    };
    let outcome = run_sweep(&config, &mut cache)?;
    match output {
        Some(p) => fs::write(p, outcome.jsonl())?,
        None => emit(&outcome.jsonl())?,
    }
    eprint!("{}", outcome.summary.to_text());
    eprintln!(
        "graphs: {} evaluated: {} cache hits: {} config: {}",
        outcome.graphs,
        outcome.evaluated_graphs,
        outcome.cache_hits,
        config.config_hash()
    );
    for f in outcome.blocking_violations() {
        eprintln!("blocking violation: {} on {}", f.property_id, f.graph_key);
    }
    Ok(ExitCode::from(outcome.exit_code() as u8))
}

fn gen(
    mode: GenMode,
    n: Option<usize>,
    count: usize,
    name: Option<&str>,
    k: Option<usize>,
    connected: bool,
    common: &Common,
) -> Result<ExitCode> {
    let need_n = || n.context("this mode needs --n");
    let graphs = match mode {
        GenMode::Exhaustive => enumerate_cubic_connected(need_n()?)?,
        GenMode::Random => {
            let n = need_n()?;
            (0..count as u64)
                .map(|i| {
                    let seed = common.seed.wrapping_add(i);
                    if connected {
                        random_connected_cubic(n, seed)
                    } else {
                        random_cubic(n, seed)
                    }
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        GenMode::Named => vec![named_graph(name.context("named mode needs --name")?)?],
        GenMode::Gadget => vec![gadget_chain(k.context("gadget mode needs --k")?)?],
    };
    emit(&to_graph6_lines(&graphs))?;
    Ok(ExitCode::SUCCESS)
}

fn report(csv_dir: Option<&PathBuf>, common: &Common) -> Result<ExitCode> {
    let path = common.cache.as_ref().context("report needs --cache")?;
    if !path.exists() {
        bail!("cache {} does not exist", path.display());
    }
    let r = render_report(&Cache::open(path)?.findings());
    if let Some(dir) = csv_dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("summary.csv"), &r.summary_csv)?;
        fs::write(dir.join("graphs.csv"), &r.graphs_csv)?;
        fs::write(dir.join("gaps.csv"), &r.gap_csv)?;
    }
    match common.format {
        Format::Text => emit(&r.markdown)?,
        Format::Json => emit(
            &(json!({ "graphs": r.graph_rows, "violated": r.violated, "summary_csv": r.summary_csv }).to_string()
                + "\n"),
        )?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { graphs, common } => solve(&graphs, &common),
        Command::Sweep {
            corpus,
            properties,
            config,
            output,
            common,
        } => sweep(&corpus, &properties, config.as_ref(), output.as_ref(), &common),
        Command::Gen {
            mode,
            n,
            count,
            name,
            k,
            connected,
            common,
        } => gen(mode, n, count, name.as_deref(), k, connected, &common),
        Command::Check {
            kind,
            graph,
            x,
            s,
            u,
            common,
        } => {
            let inline: Vec<String> = graph.into_iter().collect();
            let g = common.graphs(&inline)?.into_iter().next().context("no graph given")?;
            let req = CheckRequest {
                x,
                s,
                u,
                peel_policy: common.peel_policy,
                budget: common.budget(),
                ..CheckRequest::new(kind, g)
            };
            let r = run_check(&req)?;
            emit(&match common.format {
                Format::Text => r.to_text() + "\n",
                Format::Json => r.to_json() + "\n",
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { csv_dir, common } => report(csv_dir.as_ref(), &common),
    }
}

fn is_budget(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(c.downcast_ref::<SolveError>(), Some(SolveError::BudgetExhausted { .. }))
            || matches!(
                c.downcast_ref::<MachineryError>(),
                Some(MachineryError::Solve(SolveError::BudgetExhausted { .. }))
            )
            || c.downcast_ref::<HarnessError>().is_some_and(HarnessError::is_budget)
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_budget(&e) {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
