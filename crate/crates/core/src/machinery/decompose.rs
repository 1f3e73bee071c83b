//! Decomposition of a connected cubic graph into paths and cycles around a
//! minimum dominating set X: peel U-edges, pick T1 (degree-3 vertices outside
//! X) and T2 (one neighbor of every degree-3 vertex of X), replace
//! `T' = T1 ∪ T2`, and inspect the components of the result.

use serde::{Deserialize, Serialize};

use super::{
    apply_replacement, compute_t, peel_u_iterative, MachineryError, PeelPolicy, PeelResult, ReplacementTrace, TSet,
};
use crate::graph::{Graph, Shape, TransformTrace, VertexSet};
use crate::solvers::{gamma_exact, DominationCertificate, SolveBudget};

/// Pipeline steps that the construction expects never to happen. They are
/// reported rather than raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ContractViolation {
    /// A degree-3 vertex outside X has several X-neighbors after peeling.
    MultipleXNeighbors { vertex: usize, x_neighbors: Vec<usize> },
    /// A selected T1/T2 vertex is not in T(X); it is left out of T'.
    NotInT { vertex: usize },
    /// A degree-3 vertex of X has a neighbor outside T(X).
    NeighborOutsideT { x: usize, neighbor: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub shape: Shape,
    /// `Y(A)`.
    pub y: VertexSet,
    /// Whether `N_A[Y(A)] = V(A)`.
    pub dominated: bool,
    /// γ of the component.
    pub gamma: usize,
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub x: VertexSet,
    pub policy: PeelPolicy,
    pub peel: PeelResult,
    /// T(X) computed in the peeled graph G'.
    pub t_set: TSet,
    pub t1: VertexSet,
    pub t2: VertexSet,
    pub t_prime: VertexSet,
    pub replacement: ReplacementTrace,
    /// G'' = G'(T').
    pub reduced: Graph,
    /// `Y = X ∪ T'`.
    pub y: VertexSet,
    pub components: Vec<ComponentReport>,
    pub contract_violations: Vec<ContractViolation>,
    /// Whether Y dominates G''.
    pub y_dominates: bool,
    /// Vertex and edge counts of G'' match the replacement accounting.
    pub accounting_ok: bool,
    pub max_degree_le_2: bool,
    /// γ(G'') = |X'|.
    pub gamma_reduced: usize,
    /// Peel followed by replacement, replayable from G.
    pub trace: TransformTrace,
}

impl DecompositionResult {
    /// Every component is an isolated vertex, path or cycle dominated by its
    /// share of Y.
    pub fn claim_holds(&self) -> bool {
        self.components.iter().all(|c| c.shape.is_path_like() && c.dominated)
    }

    /// `|Y| - |X'|`.
    pub fn gap(&self) -> isize {
        self.y.len() as isize - self.gamma_reduced as isize
    }
}

pub fn claim_decompose(
    g: &Graph,
    x: &DominationCertificate,
    policy: PeelPolicy,
    budget: &SolveBudget,
) -> Result<DecompositionResult, MachineryError> {
    super::require_connected_cubic(g)?;
    super::require_minimum(g, x.set(), budget)?;
    decompose_unchecked(g, x.set(), policy, budget)
}

/// The pipeline without the cubic/minimality preconditions.
pub(crate) fn decompose_unchecked(
    g: &Graph,
    x: &VertexSet,
    policy: PeelPolicy,
    budget: &SolveBudget,
) -> Result<DecompositionResult, MachineryError> {
    let peel = peel_u_iterative(g, x, policy)?;
    let gp = &peel.graph;
    let t_set = compute_t(gp, x)?;
    let mut violations = Vec::new();

    let mut t1 = VertexSet::new();
    for v in (0..gp.n()).filter(|v| !x.contains(v) && gp.degree(*v) == 3) {
        let xn: Vec<usize> = gp.neighbors(v).iter().copied().filter(|w| x.contains(w)).collect();
        if xn.len() >= 2 {
            violations.push(ContractViolation::MultipleXNeighbors {
                vertex: v,
                x_neighbors: xn,
            });
        }
        t1.insert(v);
    }

    let mut t2 = VertexSet::new();
    for &v in x.iter().filter(|&&v| gp.degree(v) == 3) {
        let nb = gp.neighbors(v);
        for &w in nb {
            if !t_set.members.contains(&w) {
                violations.push(ContractViolation::NeighborOutsideT { x: v, neighbor: w });
            }
        }
        let y = nb.iter().copied().find(|&w| gp.degree(w) == 3).unwrap_or(nb[0]);
        t2.insert(y);
    }

    let mut t_prime = VertexSet::new();
    for &v in t1.union(&t2) {
        if t_set.members.contains(&v) {
            t_prime.insert(v);
        } else {
            violations.push(ContractViolation::NotInT { vertex: v });
        }
    }

    let (reduced, replacement) = apply_replacement(gp, x, &t_prime)?;
    let y: VertexSet = x.union(&t_prime).copied().collect();

    let extra: usize = t_prime.iter().map(|&v| gp.degree(v).saturating_sub(1)).sum();
    let accounting_ok = reduced.n() == gp.n() + extra
        && reduced.edge_count() + t_prime.len() == gp.edge_count() + extra
        && replacement.new_vertices() == extra;

    let mut components = Vec::new();
    for comp in reduced.connected_components() {
        let vs: VertexSet = comp.vertices.iter().copied().collect();
        let (sub, old_ids) = reduced.induced_subgraph(&vs)?;
        let y_local: VertexSet = (0..sub.n()).filter(|&i| y.contains(&old_ids[i])).collect();
        let gamma = gamma_exact(&sub, budget)?.size();
        components.push(ComponentReport {
            y: y.intersection(&vs).copied().collect(),
            dominated: sub.dominates(&y_local),
            vertices: comp.vertices,
            shape: comp.shape,
            gamma,
        });
    }

    let mut trace = peel.trace.clone();
    trace.extend(&replacement.trace);
    Ok(DecompositionResult {
        x: x.clone(),
        policy,
        y_dominates: reduced.dominates(&y),
        max_degree_le_2: reduced.max_degree() <= 2,
        gamma_reduced: components.iter().map(|c| c.gamma).sum(),
        peel,
        t_set,
        t1,
        t2,
        t_prime,
        replacement,
        reduced,
        y,
        components,
        contract_violations: violations,
        accounting_ok,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_worked_example() {
        let b = SolveBudget::default();
        let x = DominationCertificate::dominating(&k4(), [0]).unwrap();
        let r = claim_decompose(&k4(), &x, PeelPolicy::Any, &b).unwrap();
        assert_eq!(r.peel.graph, Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        assert!(r.t1.is_empty());
        assert_eq!(r.t2, [1].into());
        assert_eq!(r.y, [0, 1].into());
        assert_eq!(r.reduced, Graph::from_edges(4, &[(0, 2), (0, 3)]).unwrap());
        let shapes: Vec<_> = r.components.iter().map(|c| (c.vertices.clone(), c.shape)).collect();
        assert_eq!(shapes, vec![(vec![0, 2, 3], Shape::Path), (vec![1], Shape::Isolated)]);
        assert!(r.claim_holds() && r.y_dominates && r.accounting_ok && r.max_degree_le_2);
        assert!(r.contract_violations.is_empty());
        assert_eq!(r.trace.replay(&k4()).unwrap(), r.reduced);
        assert_eq!(r.gap(), 0);
    }

    #[test]
    fn k4_under_degree_three_policy() {
        let b = SolveBudget::default();
        let x = DominationCertificate::dominating(&k4(), [0]).unwrap();
        let r = claim_decompose(&k4(), &x, PeelPolicy::Deg3, &b).unwrap();
        // one triangle edge survives, so the X-vertex stays on a cycle
        assert_eq!(r.t2, [1].into());
        assert!(r.components.iter().any(|c| c.shape == Shape::Cycle));
        assert!(r.claim_holds());
    }

    #[test]
    fn path_is_its_own_decomposition() {
        let b = SolveBudget::default();
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = decompose_unchecked(&p3, &[1].into(), PeelPolicy::Deg3, &b).unwrap();
        assert_eq!(r.reduced, p3);
        assert!(r.trace.is_empty());
        assert!(r.claim_holds());
    }

    #[test]
    fn preconditions() {
        let b = SolveBudget::default();
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let x = DominationCertificate::dominating(&c4, [0, 2]).unwrap();
        assert_eq!(
            claim_decompose(&c4, &x, PeelPolicy::Any, &b).unwrap_err(),
            MachineryError::NotCubic
        );
        let big = DominationCertificate::dominating(&k4(), [0, 1]).unwrap();
        assert!(matches!(
            claim_decompose(&k4(), &big, PeelPolicy::Any, &b),
            Err(MachineryError::NotMinimum { size: 2, gamma: 1 })
        ));
    }
}
