use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::sync::mpsc;

use rayon::prelude::*;
use serde::Serialize;

use super::cache::append_lines;
use super::{evaluate_graph, graph_key, Cache, Finding, HarnessError, PropertyId, RunConfig, Verdict};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub holds: usize,
    pub violated: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub per_property: BTreeMap<PropertyId, Counts>,
}

impl Summary {
    pub fn from_findings(findings: &[Finding]) -> Self {
        let mut per_property: BTreeMap<PropertyId, Counts> = BTreeMap::new();
        for f in findings {
            let c = per_property.entry(f.property_id).or_default();
            match f.verdict {
                Verdict::Holds => c.holds += 1,
                Verdict::Violated => c.violated += 1,
                Verdict::NotApplicable => c.not_applicable += 1,
            }
        }
        Summary { per_property }
    }

    pub fn counts(&self, p: PropertyId) -> Counts {
        self.per_property.get(&p).copied().unwrap_or_default()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:<28} {:>7} {:>9} {:>7}\n", "property", "holds", "violated", "n/a");
        for (p, c) in &self.per_property {
            let _ = writeln!(
                out,
                "{:<28} {:>7} {:>9} {:>7}",
                p.as_str(),
                c.holds,
                c.violated,
                c.not_applicable
            );
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    /// Sorted by `(graph_key, property_id)`.
    pub findings: Vec<Finding>,
    pub graphs: usize,
    /// Graphs whose findings were all served from the cache.
    pub cached_graphs: usize,
    pub cache_hits: usize,
    /// Graphs evaluated in this run.
    pub evaluated_graphs: usize,
    pub summary: Summary,
}

impl SweepOutcome {
    pub fn jsonl(&self) -> String {
        self.findings.iter().map(|f| f.to_json_line() + "\n").collect()
    }

    pub fn blocking_violations(&self) -> Vec<&Finding> {
        self.findings
            .iter()
            .filter(|f| f.verdict == Verdict::Violated && f.property_id.is_blocking())
            .collect()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.findings.iter().any(|f| f.solver_stats.budget_exhausted)
    }

    /// 0 clean, 1 blocking violation, 3 some check ran out of budget.
    pub fn exit_code(&self) -> i32 {
        if !self.blocking_violations().is_empty() {
            1
        } else if self.budget_exhausted() {
            3
        } else {
            0
        }
    }
}

/// Runs every configured property on every distinct graph of the corpus.
/// Graphs with all findings cached under the same config hash are skipped;
/// fresh findings are appended to the cache by a single writer thread.
pub fn run_sweep(config: &RunConfig, cache: &mut Cache) -> Result<SweepOutcome, HarnessError> {
    let hash = config.config_hash();
    let props = config.sorted_properties();
    let mut graphs: BTreeMap<String, Graph> = BTreeMap::new();
    for g in config.corpus.generate()? {
        let (key, keyed) = graph_key(&g)?;
        graphs.entry(key).or_insert(keyed);
    }

    let mut findings = Vec::new();
    let mut todo = Vec::new();
    for (key, g) in &graphs {
        let cached: Option<Vec<Finding>> = props.iter().map(|&p| cache.get(key, p, &hash).cloned()).collect();
        match cached {
            Some(fs) => findings.extend(fs),
            None => todo.push((key, g)),
        }
    }
    let cached_graphs = graphs.len() - todo.len();
    let cache_hits = findings.len();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| HarnessError::Usage(format!("cannot start worker pool: {e}")))?;
    let mut out = cache.appender()?;
    let fresh: Vec<Finding> = std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<Vec<Finding>>();
        let writer = scope.spawn(move || -> std::io::Result<Vec<Finding>> {
            let mut all = Vec::new();
            for batch in rx {
                if let Some(w) = out.as_mut() {
                    append_lines(w, &batch)?;
                }
                all.extend(batch);
            }
            if let Some(w) = out.as_mut() {
                w.flush()?;
            }
            Ok(all)
        });
        pool.install(|| {
            todo.par_iter().for_each_with(tx, |tx, (key, g)| {
                let fs = evaluate_graph(g, key, config, &hash);
                tx.send(fs).expect("writer outlives workers");
            });
        });
        writer.join().expect("writer thread panicked")
    })?;

    let evaluated_graphs = todo.len();
    for f in &fresh {
        cache.insert(f.clone());
    }
    findings.extend(fresh);
    findings.sort_by(|a, b| (&a.graph_key, a.property_id).cmp(&(&b.graph_key, b.property_id)));
    let summary = Summary::from_findings(&findings);
    Ok(SweepOutcome {
        findings,
        graphs: graphs.len(),
        cached_graphs,
        cache_hits,
        evaluated_graphs,
        summary,
    })
}
