use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FactVerdict, MachineryError, Violation};
use crate::graph::{to_graph6, EditKind, Graph, GraphEdit, TransformTrace, VertexSet};
use crate::solvers::{gamma_exact, SolveBudget};

/// `T(Y)`: the union over `t ∈ Y` of the maximal `B(t) ⊆ N(t)` whose members
/// have no vertex of Y in their closed neighborhood apart from `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSet {
    pub members: VertexSet,
    pub b_map: BTreeMap<usize, VertexSet>,
    /// Each member's unique neighbor in Y.
    pub anchor: BTreeMap<usize, usize>,
}

pub fn compute_t(g: &Graph, y: &VertexSet) -> Result<TSet, MachineryError> {
    g.check_vertices(y)?;
    let mut b_map = BTreeMap::new();
    let mut anchor = BTreeMap::new();
    for &t in y {
        let b: VertexSet = g
            .neighbors(t)
            .iter()
            .copied()
            .filter(|&b| !y.contains(&b) && g.neighbors(b).iter().all(|&w| w == t || !y.contains(&w)))
            .collect();
        for &v in &b {
            anchor.insert(v, t);
        }
        b_map.insert(t, b);
    }
    Ok(TSet {
        members: anchor.keys().copied().collect(),
        b_map,
        anchor,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replacement {
    pub v1: usize,
    /// The deleted anchor edge is `v1-t1`.
    pub t1: usize,
    /// `(t2, w2)`: the edge `v1-t2` (as it stood when `v1` was processed)
    /// was subdivided by the new vertex `w2`.
    pub subdivisions: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacementTrace {
    pub replaced: Vec<Replacement>,
    pub result_graph6: String,
    pub trace: TransformTrace,
}

impl ReplacementTrace {
    pub fn new_vertices(&self) -> usize {
        self.replaced.iter().map(|r| r.subdivisions.len()).sum()
    }
}

/// `G(S)`: for every `v1 ∈ S` (ascending), delete the edge to its anchor and
/// subdivide each remaining incident edge with a fresh vertex.
pub fn apply_replacement(g: &Graph, y: &VertexSet, s: &VertexSet) -> Result<(Graph, ReplacementTrace), MachineryError> {
    let t = compute_t(g, y)?;
    if let Some(&v) = s.iter().find(|v| !t.members.contains(v)) {
        return Err(MachineryError::NotInT(v));
    }
    let mut cur = g.clone();
    let mut trace = TransformTrace::default();
    let mut replaced = Vec::with_capacity(s.len());
    for &v1 in s {
        let t1 = t.anchor[&v1];
        let edit = GraphEdit::new(EditKind::DeleteEdge(v1.min(t1), v1.max(t1)), "replace:anchor");
        cur = cur.apply_edit(&edit)?.graph;
        trace.push(edit);
        let mut subdivisions = Vec::new();
        for t2 in cur.neighbors(v1).to_vec() {
            let w2 = cur.n();
            let edit = GraphEdit::new(
                EditKind::SubdivideEdge {
                    u: v1,
                    v: t2,
                    new_id: w2,
                },
                "replace:subdivide",
            );
            cur = cur.apply_edit(&edit)?.graph;
            trace.push(edit);
            subdivisions.push((t2, w2));
        }
        replaced.push(Replacement { v1, t1, subdivisions });
    }
    Ok((
        cur.clone(),
        ReplacementTrace {
            replaced,
            result_graph6: to_graph6(&cur),
            trace,
        },
    ))
}

/// With `y` a minimum dominating set of `g` and `s ⊆ T(y)`, checks that
/// `y ∪ s` dominates `G(S)`.
pub fn check_fact_t_dominating(
    g: &Graph,
    y: &VertexSet,
    s: &VertexSet,
    budget: &SolveBudget,
) -> Result<FactVerdict, MachineryError> {
    super::require_minimum(g, y, budget)?;
    check_fact_t_dominating_known(g, y, s)
}

/// Same check without re-solving for minimality; the caller vouches for it.
pub(crate) fn check_fact_t_dominating_known(
    g: &Graph,
    y: &VertexSet,
    s: &VertexSet,
) -> Result<FactVerdict, MachineryError> {
    let (gs, _) = apply_replacement(g, y, s)?;
    let ys: VertexSet = y.union(s).copied().collect();
    Ok(match gs.first_undominated(&ys) {
        None => FactVerdict::Holds,
        Some(vertex) => FactVerdict::Violated {
            violation: Violation::Undominated { vertex },
        },
    })
}

/// With `s ⊆ T(y)` and `y` a minimum dominating set of `g - s`, checks that
/// `y ∪ s` is a minimum dominating set of `G(S)`.
pub fn check_fact_t_dset(
    g: &Graph,
    y: &VertexSet,
    s: &VertexSet,
    budget: &SolveBudget,
) -> Result<FactVerdict, MachineryError> {
    let t = compute_t(g, y)?;
    if let Some(&v) = s.iter().find(|v| !t.members.contains(v)) {
        return Err(MachineryError::NotInT(v));
    }
    let (minus, map) = g.delete_vertices(s)?;
    if minus.n() == 0 {
        return Err(MachineryError::Precondition("G - S is empty".into()));
    }
    let y_minus: VertexSet = y.iter().filter_map(|&v| map[v]).collect();
    if let Some(v) = minus.first_undominated(&y_minus) {
        return Err(MachineryError::Precondition(format!(
            "Y does not dominate G - S (vertex {v} of G - S)"
        )));
    }
    let gamma_minus = gamma_exact(&minus, budget)?.size();
    if y.len() != gamma_minus {
        return Err(MachineryError::Precondition(format!(
            "|Y| = {} but gamma(G - S) = {gamma_minus}",
            y.len()
        )));
    }
    let (gs, _) = apply_replacement(g, y, s)?;
    let ys: VertexSet = y.union(s).copied().collect();
    if let Some(vertex) = gs.first_undominated(&ys) {
        return Ok(FactVerdict::Violated {
            violation: Violation::Undominated { vertex },
        });
    }
    let gamma = gamma_exact(&gs, budget)?;
    if gamma.size() < ys.len() {
        return Ok(FactVerdict::Violated {
            violation: Violation::NotMinimum {
                claimed: ys.len(),
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

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn t_examples() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(compute_t(&star, &set(&[0])).unwrap().members, set(&[1, 2, 3]));
        // P4 = v1..v4, Y = {v2, v3}
        assert_eq!(compute_t(&path(4), &set(&[1, 2])).unwrap().members, set(&[0, 3]));
        // P5, Y = {v2, v5}
        let t = compute_t(&path(5), &set(&[1, 4])).unwrap();
        assert_eq!(t.members, set(&[0, 2, 3]));
        assert_eq!(t.anchor[&2], 1);
        assert_eq!(t.anchor[&3], 4);
        assert_eq!(t.b_map[&1], set(&[0, 2]));
    }

    #[test]
    fn replacement_p5() {
        let (gs, tr) = apply_replacement(&path(5), &set(&[1, 4]), &set(&[2])).unwrap();
        // v1-v2 and v3-w-v4-v5 with w = 5
        assert_eq!(gs, Graph::from_edges(6, &[(0, 1), (2, 5), (5, 3), (3, 4)]).unwrap());
        assert_eq!(
            tr.replaced[0],
            Replacement {
                v1: 2,
                t1: 1,
                subdivisions: vec![(3, 5)]
            }
        );
        assert_eq!(tr.trace.replay(&path(5)).unwrap(), gs);
    }

    #[test]
    fn replacement_p3_isolates_leaf() {
        let (gs, tr) = apply_replacement(&path(3), &set(&[1]), &set(&[0])).unwrap();
        assert_eq!(gs, Graph::from_edges(3, &[(1, 2)]).unwrap());
        assert_eq!(tr.new_vertices(), 0);
        let (same, tr) = apply_replacement(&path(3), &set(&[1]), &VertexSet::new()).unwrap();
        assert_eq!(same, path(3));
        assert!(tr.trace.is_empty());
        assert_eq!(
            apply_replacement(&path(3), &set(&[1]), &set(&[1])).unwrap_err(),
            MachineryError::NotInT(1)
        );
    }

    #[test]
    fn fact_t_examples() {
        let b = SolveBudget::default();
        let p5 = path(5);
        let y = set(&[1, 4]);
        assert!(check_fact_t_dominating(&p5, &y, &set(&[2]), &b).unwrap().holds());
        assert!(check_fact_t_dominating(&p5, &y, &VertexSet::new(), &b).unwrap().holds());
        assert!(check_fact_t_dset(&p5, &y, &set(&[2]), &b).unwrap().holds());
        assert!(check_fact_t_dset(&p5, &y, &VertexSet::new(), &b).unwrap().holds());
        // P5 - v1 = P4 on v2..v5, where {v2, v5} is minimum
        assert!(check_fact_t_dset(&p5, &y, &set(&[0]), &b).unwrap().holds());
        // members of Y are never in T(Y)
        let err = check_fact_t_dset(&p5, &set(&[0, 3]), &set(&[0]), &b).unwrap_err();
        assert_eq!(err, MachineryError::NotInT(0));
    }
}
