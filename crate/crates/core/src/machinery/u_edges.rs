use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FactVerdict, MachineryError, Violation};
use crate::graph::{to_graph6, EditKind, Graph, GraphEdit, TransformTrace, VertexSet};
use crate::solvers::{gamma_exact, DominationCertificate, SolveBudget};

/// Which condition places an edge in U(X). Ordered by deletion priority.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum URule {
    /// Neither endpoint in X.
    #[serde(rename = "i")]
    I,
    /// `v1 ∈ X`, `v2 ∉ X`, and `v2` has another neighbor in X.
    #[serde(rename = "ii")]
    Ii,
    /// Both endpoints in X.
    #[serde(rename = "iii")]
    Iii,
}

impl fmt::Display for URule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            URule::I => "i",
            URule::Ii => "ii",
            URule::Iii => "iii",
        })
    }
}

/// An edge of U(X). For rule ii, `v1` is the endpoint in X; otherwise `v1 < v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UEdge {
    pub v1: usize,
    pub v2: usize,
    pub rule: URule,
}

impl UEdge {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.v1.min(self.v2), self.v1.max(self.v2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UEdgeSet {
    /// Sorted by `(min endpoint, max endpoint)`.
    pub edges: Vec<UEdge>,
    pub source_graph6: String,
    pub source_x: VertexSet,
}

impl UEdgeSet {
    pub fn contains(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.iter().any(|e| e.endpoints() == key)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// The U(X) rule that edge `uv` satisfies, if any. The edge must exist.
pub fn classify_edge(g: &Graph, x: &VertexSet, u: usize, v: usize) -> Option<URule> {
    match (x.contains(&u), x.contains(&v)) {
        (false, false) => Some(URule::I),
        (true, true) => Some(URule::Iii),
        (u_in, _) => {
            let (inside, outside) = if u_in { (u, v) } else { (v, u) };
            g.neighbors(outside)
                .iter()
                .any(|&w| w != inside && x.contains(&w))
                .then_some(URule::Ii)
        }
    }
}

pub fn compute_u(g: &Graph, x: &VertexSet) -> Result<UEdgeSet, MachineryError> {
    g.check_vertices(x)?;
    let edges = g
        .edges()
        .filter_map(|(u, v)| {
            classify_edge(g, x, u, v).map(|rule| {
                let (v1, v2) = if rule == URule::Ii && !x.contains(&u) {
                    (v, u)
                } else {
                    (u, v)
                };
                UEdge { v1, v2, rule }
            })
        })
        .collect();
    Ok(UEdgeSet {
        edges,
        source_graph6: to_graph6(g),
        source_x: x.clone(),
    })
}

/// Which U-edges the iterative peel may delete.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeelPolicy {
    /// Only edges at a vertex whose current degree is 3.
    #[default]
    Deg3,
    Any,
}

impl FromStr for PeelPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "deg3" => Ok(PeelPolicy::Deg3),
            "any" => Ok(PeelPolicy::Any),
            other => Err(format!("unknown peel policy {other:?} (expected deg3 or any)")),
        }
    }
}

impl fmt::Display for PeelPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeelPolicy::Deg3 => "deg3",
            PeelPolicy::Any => "any",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    pub graph: Graph,
    pub deleted: Vec<UEdge>,
    pub trace: TransformTrace,
    /// Index of the first deletion after which X stopped dominating.
    pub first_failure: Option<usize>,
}

impl PeelResult {
    pub fn always_dominated(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Deletes U-edges one at a time, recomputing the classification after every
/// deletion, until none is eligible.
///
/// Vertices are scanned round-robin from 0. At a scanned vertex the policy is
/// checked against its current degree, and the incident U-edge with the
/// lowest rule (ties to the smaller neighbor) is deleted before moving on to
/// the next vertex. The peel stops after a full pass without deletions.
pub fn peel_u_iterative(g: &Graph, x: &VertexSet, policy: PeelPolicy) -> Result<PeelResult, MachineryError> {
    g.check_vertices(x)?;
    if let Some(v) = g.first_undominated(x) {
        return Err(MachineryError::NotDominating(v));
    }
    let n = g.n();
    let mut cur = g.clone();
    let mut deleted = Vec::new();
    let mut trace = TransformTrace::default();
    let mut first_failure = None;
    let mut v = 0;
    let mut idle = 0;
    while n > 0 && idle < n {
        let eligible = policy == PeelPolicy::Any || cur.degree(v) == 3;
        let pick = if eligible {
            cur.neighbors(v)
                .iter()
                .filter_map(|&w| classify_edge(&cur, x, v, w).map(|r| (r, w)))
                .min()
        } else {
            None
        };
        if let Some((rule, w)) = pick {
            let (v1, v2) = match rule {
                URule::Ii if x.contains(&v) => (v, w),
                URule::Ii => (w, v),
                _ => (v.min(w), v.max(w)),
            };
            let edit = GraphEdit::new(EditKind::DeleteEdge(v.min(w), v.max(w)), format!("peel:{rule}"));
            cur = cur.apply_edit(&edit)?.graph;
            trace.push(edit);
            deleted.push(UEdge { v1, v2, rule });
            if first_failure.is_none() && cur.first_undominated(x).is_some() {
                first_failure = Some(deleted.len() - 1);
            }
            idle = 0;
        } else {
            idle += 1;
        }
        v = (v + 1) % n;
    }
    Ok(PeelResult {
        graph: cur,
        deleted,
        trace,
        first_failure,
    })
}

/// Deletes all of `u_subset` at once and checks that `x` is still a minimum
/// dominating set.
pub fn check_fact_u_literal(
    g: &Graph,
    x: &DominationCertificate,
    u_subset: &[(usize, usize)],
    budget: &SolveBudget,
) -> Result<FactVerdict, MachineryError> {
    let u = compute_u(g, x.set())?;
    if let Some(&(a, b)) = u_subset.iter().find(|&&(a, b)| !u.contains(a, b)) {
        return Err(MachineryError::NotInU(a, b));
    }
    super::require_minimum(g, x.set(), budget)?;
    let reduced = g.delete_edges(u_subset)?;
    if let Some(vertex) = reduced.first_undominated(x.set()) {
        return Ok(FactVerdict::Violated {
            violation: Violation::Undominated { vertex },
        });
    }
    let gamma = gamma_exact(&reduced, budget)?;
    if gamma.size() < x.size() {
        return Ok(FactVerdict::Violated {
            violation: Violation::NotMinimum {
                claimed: x.size(),
                gamma: gamma.size(),
                smaller: gamma,
            },
        });
    }
    Ok(FactVerdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn compute_u_examples() {
        let u = compute_u(&c4(), &set(&[0, 2])).unwrap();
        assert_eq!(u.len(), 4);
        assert!(u.edges.iter().all(|e| e.rule == URule::Ii && [0, 2].contains(&e.v1)));

        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(compute_u(&p3, &set(&[1])).unwrap().is_empty());

        let u = compute_u(&k4(), &set(&[0, 1])).unwrap();
        let rules: Vec<_> = u.edges.iter().map(|e| (e.endpoints(), e.rule)).collect();
        assert_eq!(
            rules,
            vec![
                ((0, 1), URule::Iii),
                ((0, 2), URule::Ii),
                ((0, 3), URule::Ii),
                ((1, 2), URule::Ii),
                ((1, 3), URule::Ii),
                ((2, 3), URule::I),
            ]
        );
    }

    #[test]
    fn peel_c4_trace() {
        let r = peel_u_iterative(&c4(), &set(&[0, 2]), PeelPolicy::Any).unwrap();
        let order: Vec<_> = r.deleted.iter().map(|e| e.endpoints()).collect();
        assert_eq!(order, vec![(0, 1), (2, 3)]);
        assert_eq!(r.graph, Graph::from_edges(4, &[(1, 2), (0, 3)]).unwrap());
        assert!(r.always_dominated());
        // no degree-3 vertex: the default policy leaves C4 alone
        let r = peel_u_iterative(&c4(), &set(&[0, 2]), PeelPolicy::Deg3).unwrap();
        assert!(r.deleted.is_empty());
    }

    #[test]
    fn peel_without_u_edges_is_identity() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = peel_u_iterative(&p3, &set(&[1]), PeelPolicy::Any).unwrap();
        assert!(r.trace.is_empty());
        assert_eq!(r.graph, p3);
    }

    #[test]
    fn peel_k4_leaves_a_star() {
        let r = peel_u_iterative(&k4(), &set(&[0]), PeelPolicy::Any).unwrap();
        assert!(r.deleted.iter().all(|e| e.rule == URule::I));
        assert_eq!(r.graph, Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        // with the degree-3 restriction the last triangle edge has two degree-2 ends
        let r = peel_u_iterative(&k4(), &set(&[0]), PeelPolicy::Deg3).unwrap();
        assert_eq!(r.deleted.len(), 2);
        assert_eq!(r.graph.edge_count(), 4);
        assert_eq!(r.trace.replay(&k4()).unwrap(), r.graph);
    }

    #[test]
    fn literal_fact_on_c4() {
        let b = SolveBudget::default();
        let x = DominationCertificate::dominating(&c4(), [0, 2]).unwrap();
        let v = check_fact_u_literal(&c4(), &x, &[(0, 1), (1, 2)], &b).unwrap();
        assert_eq!(
            v,
            FactVerdict::Violated {
                violation: Violation::Undominated { vertex: 1 }
            }
        );
        assert!(check_fact_u_literal(&c4(), &x, &[], &b).unwrap().holds());
        assert!(check_fact_u_literal(&c4(), &x, &[(0, 1)], &b).unwrap().holds());
        let y = DominationCertificate::dominating(&c4(), [0, 1]).unwrap();
        assert_eq!(
            check_fact_u_literal(&c4(), &y, &[(1, 2)], &b),
            Err(MachineryError::NotInU(1, 2))
        );
    }

    #[test]
    fn peel_policy_parsing() {
        assert_eq!("deg3".parse::<PeelPolicy>(), Ok(PeelPolicy::Deg3));
        assert_eq!("any".parse::<PeelPolicy>(), Ok(PeelPolicy::Any));
        assert!("all".parse::<PeelPolicy>().is_err());
    }
}
