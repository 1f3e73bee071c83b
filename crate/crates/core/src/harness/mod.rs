//! Sweep orchestration: per-graph property checks, an append-only findings
//! cache, deterministic JSONL output, reports and single-instance checks.

mod cache;
mod check;
mod properties;
mod report;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::generators::{CorpusSpec, GeneratorError};
use crate::graph::{canonical_form, to_graph6, Graph, GraphError, MAX_CANON_VERTICES};
use crate::machinery::{MachineryError, PeelPolicy};
use crate::solvers::{SolveBudget, SolveError};

pub use cache::{Cache, CacheKey};
pub use check::{run_check, CheckKind, CheckReport, CheckRequest};
pub use properties::evaluate_graph;
pub use report::{render_report, Report};
pub use sweep::{run_sweep, Counts, Summary, SweepOutcome};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("corrupt cache line {line}: {message}")]
    CorruptCache { line: usize, message: String },
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Machinery(#[from] MachineryError),
    #[error("invalid request: {0}")]
    Usage(String),
}

impl HarnessError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            HarnessError::Machinery(MachineryError::Solve(SolveError::BudgetExhausted { .. }))
        )
    }
}

/// Checked statements. The string ids are what appear in findings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyId {
    /// Connected cubic graphs have γ ≤ ⌈n/3⌉.
    ReedBound,
    /// Connected cubic graphs have γ ≤ ⌈n/3⌉ or γ = i.
    GammaEqualsIAboveBound,
    /// Claw-free graphs have γ = i.
    ClawFreeEquality,
    /// Graphs without a double star have γ = i.
    DoubleStarFreeEquality,
    /// Graphs without adjacent degree-3 vertices have γ = i.
    Deg3PairFreeEquality,
    /// Internal edges of a fewest-internal-edge d-set have closed
    /// neighborhoods disjoint from the other members'.
    DisjointNeighborhoods,
    /// Deleting a whole subset of U(X) at once keeps X a d-set.
    ULiteralDeletion,
    /// Every intermediate graph of the iterative peel is dominated by X.
    PeelSafety,
    /// `Y ∪ S` dominates the replacement graph `G(S)`.
    ReplacementDominating,
    /// `Y ∪ S` is a d-set of `G(S)` when Y is a d-set of `G - S`.
    ReplacementMinimum,
    /// The decomposition yields only paths and cycles dominated by Y.
    PathCycleDecomposition,
    /// Replacement vertex and edge counts match, Y dominates the result and
    /// the trace replays.
    DecompositionAccounting,
    /// Component reduction removes three vertices per step and keeps Y
    /// dominating.
    ComponentReduction,
    /// The exchange procedure reaches an independent d-set or stops at an
    /// edge between degree-3 vertices.
    Independentize,
    /// Branch and bound agrees with brute force on γ and i.
    OracleAgreement,
}

impl PropertyId {
    pub const ALL: [PropertyId; 15] = [
        PropertyId::ReedBound,
        PropertyId::GammaEqualsIAboveBound,
        PropertyId::ClawFreeEquality,
        PropertyId::DoubleStarFreeEquality,
        PropertyId::Deg3PairFreeEquality,
        PropertyId::DisjointNeighborhoods,
        PropertyId::ULiteralDeletion,
        PropertyId::PeelSafety,
        PropertyId::ReplacementDominating,
        PropertyId::ReplacementMinimum,
        PropertyId::PathCycleDecomposition,
        PropertyId::DecompositionAccounting,
        PropertyId::ComponentReduction,
        PropertyId::Independentize,
        PropertyId::OracleAgreement,
    ];

    /// A violation of a blocking property means the artifact itself is wrong,
    /// so sweeps exit nonzero. The rest probe the mathematics and are
    /// surfaced as results.
    pub fn is_blocking(self) -> bool {
        matches!(
            self,
            PropertyId::OracleAgreement
                | PropertyId::ReplacementDominating
                | PropertyId::PeelSafety
                | PropertyId::DecompositionAccounting
                | PropertyId::Independentize
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::ReedBound => "reed_bound",
            PropertyId::GammaEqualsIAboveBound => "gamma_equals_i_above_bound",
            PropertyId::ClawFreeEquality => "claw_free_equality",
            PropertyId::DoubleStarFreeEquality => "double_star_free_equality",
            PropertyId::Deg3PairFreeEquality => "deg3_pair_free_equality",
            PropertyId::DisjointNeighborhoods => "disjoint_neighborhoods",
            PropertyId::ULiteralDeletion => "u_literal_deletion",
            PropertyId::PeelSafety => "peel_safety",
            PropertyId::ReplacementDominating => "replacement_dominating",
            PropertyId::ReplacementMinimum => "replacement_minimum",
            PropertyId::PathCycleDecomposition => "path_cycle_decomposition",
            PropertyId::DecompositionAccounting => "decomposition_accounting",
            PropertyId::ComponentReduction => "component_reduction",
            PropertyId::Independentize => "independentize",
            PropertyId::OracleAgreement => "oracle_agreement",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown property {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub nodes: u64,
    #[serde(default)]
    pub budget_exhausted: bool,
}

/// One checked (graph, property) pair. Field order is the JSONL key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub graph_key: String,
    pub n: usize,
    pub property_id: PropertyId,
    pub verdict: Verdict,
    /// Sets, witnesses and traces backing the verdict, in the vertex labels
    /// of the graph named by `graph_key`.
    pub certificates: serde_json::Value,
    pub solver_stats: SolverStats,
    pub config_hash: String,
}

impl Finding {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("findings serialize")
    }
}

/// Everything that determines sweep output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub corpus: CorpusSpec,
    pub properties: Vec<PropertyId>,
    pub budget_nodes: u64,
    pub budget_seconds: u64,
    pub peel_policy: PeelPolicy,
    pub seed: u64,
    /// Thread count; 0 means one per core. Excluded from the hash.
    pub workers: usize,
}

impl RunConfig {
    pub fn new(corpus: CorpusSpec, properties: Vec<PropertyId>) -> Self {
        let b = SolveBudget::default();
        RunConfig {
            corpus,
            properties,
            budget_nodes: b.node_limit,
            budget_seconds: b.time_limit.as_secs(),
            peel_policy: PeelPolicy::default(),
            seed: 0,
            workers: 0,
        }
    }

    pub fn budget(&self) -> SolveBudget {
        SolveBudget {
            node_limit: self.budget_nodes,
            time_limit: std::time::Duration::from_secs(self.budget_seconds),
        }
    }

    /// Properties in evaluation order, deduplicated.
    pub fn sorted_properties(&self) -> Vec<PropertyId> {
        let mut ps = self.properties.clone();
        ps.sort();
        ps.dedup();
        ps
    }

    /// SHA-256 of the configuration as JSON with sorted keys, ignoring
    /// `workers` and property order.
    pub fn config_hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.properties = self.sorted_properties();
        let mut value = serde_json::to_value(&canonical).expect("config serializes");
        if let Some(obj) = value.as_object_mut() {
            obj.remove("workers");
        }
        // serde_json's default map is ordered, so this string is canonical
        let text = serde_json::to_string(&value).expect("value serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

/// Canonical graph6 when the graph is small enough to canonize, plain
/// graph6 otherwise, together with the graph in the key's labeling.
pub fn graph_key(g: &Graph) -> Result<(String, Graph), GraphError> {
    if g.n() <= MAX_CANON_VERTICES {
        let c = canonical_form(g)?;
        let graph = c.graph();
        Ok((c.graph6, graph))
    } else {
        Ok((to_graph6(g), g.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_ids_round_trip() {
        for p in PropertyId::ALL {
            assert_eq!(p.as_str().parse::<PropertyId>().unwrap(), p);
            assert_eq!(serde_json::to_string(&p).unwrap(), format!("\"{}\"", p.as_str()));
        }
        assert!("theorem".parse::<PropertyId>().is_err());
    }

    #[test]
    fn hash_ignores_workers_and_property_order() {
        let corpus = CorpusSpec::Named {
            names: vec!["k4".into()],
        };
        let a = RunConfig::new(corpus.clone(), vec![PropertyId::ReedBound, PropertyId::PeelSafety]);
        let mut b = RunConfig::new(corpus, vec![PropertyId::PeelSafety, PropertyId::ReedBound]);
        b.workers = 7;
        assert_eq!(a.config_hash(), b.config_hash());
        assert_eq!(a.config_hash().len(), 64);
        b.seed = 1;
        assert_ne!(a.config_hash(), b.config_hash());
    }
}
