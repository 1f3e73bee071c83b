//! Executable graph transformations around minimum dominating sets in cubic
//! graphs: edge classification and peeling, the T-set and its replacement
//! construction, the path/cycle decomposition pipeline, component reduction,
//! and the exchange procedure that turns a d-set independent.

mod decompose;
mod independentize;
mod reduce;
mod t_set;
mod u_edges;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{to_graph6, Graph, GraphError, TraceStep, TransformTrace};
use crate::solvers::{gamma_exact, i_exact, reed_bound, DominationCertificate, SolveBudget, SolveError};

pub use decompose::{claim_decompose, ComponentReport, ContractViolation, DecompositionResult};
pub use independentize::{independentize, IndependentizeOutcome, Move};
pub use reduce::{component_reduce, ReductionResult, ReductionStep, YUpdate};
pub use t_set::{
    apply_replacement, check_fact_t_dominating, check_fact_t_dset, compute_t, Replacement, ReplacementTrace, TSet,
};
pub use u_edges::{
    check_fact_u_literal, classify_edge, compute_u, peel_u_iterative, PeelPolicy, PeelResult, UEdge, UEdgeSet, URule,
};

pub(crate) use decompose::decompose_unchecked;
pub(crate) use t_set::check_fact_t_dominating_known;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineryError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("vertex {0} is not dominated by the given set")]
    NotDominating(usize),
    #[error("set of size {size} is not minimum (gamma = {gamma})")]
    NotMinimum { size: usize, gamma: usize },
    #[error("edge {0}-{1} is not in U(X)")]
    NotInU(usize, usize),
    #[error("vertex {0} is not in T(Y)")]
    NotInT(usize),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is not connected")]
    NotConnected,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Why a checked statement failed on a concrete instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Violation {
    Undominated {
        vertex: usize,
    },
    NotMinimum {
        claimed: usize,
        gamma: usize,
        smaller: DominationCertificate,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum FactVerdict {
    Holds,
    Violated { violation: Violation },
}

impl FactVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, FactVerdict::Holds)
    }
}

/// Serialized trace: `{graph6, steps: [{op, args, tag}], verdict}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub graph6: String,
    pub steps: Vec<TraceStep>,
    pub verdict: String,
}

impl TraceDocument {
    pub fn new(start: &Graph, trace: &TransformTrace, verdict: impl Into<String>) -> Self {
        TraceDocument {
            graph6: to_graph6(start),
            steps: trace.steps(),
            verdict: verdict.into(),
        }
    }

    pub fn replay(&self) -> Result<Graph, GraphError> {
        let start = crate::graph::parse_graph6(&self.graph6)?;
        TransformTrace::from_steps(&self.steps)?.replay(&start)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremBranch {
    /// γ ≤ ⌈n/3⌉ and γ = i.
    Both,
    /// γ ≤ ⌈n/3⌉ only.
    Bound,
    /// γ = i only.
    Equality,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub gamma: DominationCertificate,
    pub i: DominationCertificate,
    pub bound: usize,
    pub branch: TheoremBranch,
}

impl TheoremVerdict {
    pub fn holds(&self) -> bool {
        self.branch != TheoremBranch::Neither
    }
}

/// For connected cubic `g`: holds iff γ ≤ ⌈n/3⌉ or γ = i.
pub fn theorem_check(g: &Graph, budget: &SolveBudget) -> Result<TheoremVerdict, MachineryError> {
    require_connected_cubic(g)?;
    let gamma = gamma_exact(g, budget)?;
    let i = i_exact(g, budget)?;
    Ok(theorem_verdict(g, gamma, i))
}

pub(crate) fn theorem_verdict(g: &Graph, gamma: DominationCertificate, i: DominationCertificate) -> TheoremVerdict {
    let bound = reed_bound(g.n());
    let branch = match (gamma.size() <= bound, gamma.size() == i.size()) {
        (true, true) => TheoremBranch::Both,
        (true, false) => TheoremBranch::Bound,
        (false, true) => TheoremBranch::Equality,
        (false, false) => TheoremBranch::Neither,
    };
    TheoremVerdict {
        gamma,
        i,
        bound,
        branch,
    }
}

pub(crate) fn require_connected_cubic(g: &Graph) -> Result<(), MachineryError> {
    if !g.is_cubic() {
        return Err(MachineryError::NotCubic);
    }
    if !g.is_connected() {
        return Err(MachineryError::NotConnected);
    }
    Ok(())
}

pub(crate) fn require_minimum(
    g: &Graph,
    x: &crate::graph::VertexSet,
    budget: &SolveBudget,
) -> Result<usize, MachineryError> {
    if let Some(v) = g.first_undominated(x) {
        return Err(MachineryError::NotDominating(v));
    }
    let gamma = gamma_exact(g, budget)?.size();
    if x.len() != gamma {
        return Err(MachineryError::NotMinimum { size: x.len(), gamma });
    }
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_examples() {
        let b = SolveBudget::default();
        let petersen = {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((5 + i, 5 + (i + 2) % 5));
                e.push((i, i + 5));
            }
            Graph::from_edges(10, &e).unwrap()
        };
        let v = theorem_check(&petersen, &b).unwrap();
        assert_eq!((v.gamma.size(), v.bound), (3, 4));
        assert!(v.holds());

        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let v = theorem_check(&k33, &b).unwrap();
        assert_eq!((v.gamma.size(), v.i.size(), v.branch), (2, 3, TheoremBranch::Bound));

        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(theorem_check(&k4, &b).unwrap().branch, TheoremBranch::Both);

        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(theorem_check(&c4, &b), Err(MachineryError::NotCubic));
    }
}
