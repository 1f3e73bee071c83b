use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::MachineryError;
use crate::graph::{Graph, VertexSet};

/// Replacement of `x2` by its other neighbor after a step creates the
/// Y-adjacency `x1x2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YUpdate {
    pub x1: usize,
    pub x2: usize,
    pub added: Option<usize>,
}

/// One reduction step, in the labels of the input component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub v: usize,
    /// `N[v]`, always three vertices.
    pub removed: Vec<usize>,
    pub new_edge: Option<(usize, usize)>,
    pub y_update: Option<YUpdate>,
    /// Whether the updated Y still dominates the reduced graph.
    pub y_dominates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    /// The final graph, relabeled to `0..labels.len()`.
    pub graph: Graph,
    /// `labels[i]` is the input label of vertex `i` of `graph`.
    pub labels: Vec<usize>,
    /// Final Y, in input labels.
    pub y: VertexSet,
    pub steps: Vec<ReductionStep>,
}

impl ReductionResult {
    pub fn all_steps_dominated(&self) -> bool {
        self.steps.iter().all(|s| s.y_dominates)
    }
}

struct Work {
    adj: BTreeMap<usize, BTreeSet<usize>>,
    y: VertexSet,
}

impl Work {
    fn closed(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(v).chain(self.adj[&v].iter().copied())
    }

    fn dominated(&self) -> bool {
        self.adj.keys().all(|&v| self.closed(v).any(|w| self.y.contains(&w)))
    }

    /// Smallest Y-vertex of degree 2 with no Y-neighbor whose removal leaves
    /// something behind.
    fn eligible(&self) -> Option<usize> {
        self.y.iter().copied().find(|&v| {
            let nb = &self.adj[&v];
            nb.len() == 2 && nb.iter().all(|w| !self.y.contains(w)) && self.adj.len() > 3
        })
    }

    fn distances(&self, from: &[usize]) -> BTreeMap<usize, usize> {
        let mut dist: BTreeMap<usize, usize> = from.iter().map(|&v| (v, 0)).collect();
        let mut queue: VecDeque<usize> = from.iter().copied().collect();
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for &w in &self.adj[&u] {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Repeatedly removes `N[v]` for a degree-2 vertex `v ∈ Y` whose neighbors
/// lie outside Y, joins the two attachment vertices by a new edge when there
/// are exactly two, and repairs Y when that edge joins two Y-vertices.
pub fn component_reduce(a: &Graph, y_a: &VertexSet) -> Result<ReductionResult, MachineryError> {
    a.check_vertices(y_a)?;
    if a.max_degree() > 2 {
        return Err(MachineryError::Precondition(format!(
            "component has max degree {} > 2",
            a.max_degree()
        )));
    }
    if let Some(v) = a.first_undominated(y_a) {
        return Err(MachineryError::NotDominating(v));
    }
    let mut w = Work {
        adj: (0..a.n())
            .map(|v| (v, a.neighbors(v).iter().copied().collect()))
            .collect(),
        y: y_a.clone(),
    };
    let mut steps = Vec::new();
    while let Some(v) = w.eligible() {
        let removed: Vec<usize> = w.closed(v).collect::<BTreeSet<_>>().into_iter().collect();
        let attach: BTreeSet<usize> = removed
            .iter()
            .flat_map(|u| w.adj[u].iter().copied())
            .filter(|u| !removed.contains(u))
            .collect();
        for u in &removed {
            for nb in w.adj.remove(u).unwrap_or_default() {
                if let Some(s) = w.adj.get_mut(&nb) {
                    s.remove(u);
                }
            }
            w.y.remove(u);
        }
        let attach: Vec<usize> = attach.into_iter().collect();
        let new_edge = match attach[..] {
            [p, q] if !w.adj[&p].contains(&q) => {
                w.adj.get_mut(&p).unwrap().insert(q);
                w.adj.get_mut(&q).unwrap().insert(p);
                Some((p, q))
            }
            _ => None,
        };
        let y_update = new_edge
            .filter(|(p, q)| w.y.contains(p) && w.y.contains(q))
            .map(|(p, q)| {
                // farther from the attachment wins; both sit on it, so the
                // distance ties and the larger label is replaced
                let dist = w.distances(&attach);
                let (x1, x2) = if dist.get(&q) >= dist.get(&p) { (p, q) } else { (q, p) };
                let rest: Vec<usize> = w.adj[&x2].iter().copied().filter(|&u| u != x1).collect();
                w.y.remove(&x2);
                let added = match rest[..] {
                    [z] => {
                        w.y.insert(z);
                        Some(z)
                    }
                    _ => None,
                };
                YUpdate { x1, x2, added }
            });
        steps.push(ReductionStep {
            v,
            removed,
            new_edge,
            y_update,
            y_dominates: w.dominated(),
        });
    }

    let labels: Vec<usize> = w.adj.keys().copied().collect();
    let index: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (&u, nb) in &w.adj {
        edges.extend(nb.iter().filter(|&&v| u < v).map(|v| (index[&u], index[v])));
    }
    Ok(ReductionResult {
        graph: Graph::from_edges(labels.len(), &edges)?,
        labels,
        y: w.y,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn p6_reduces_to_p3() {
        let p6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let r = component_reduce(&p6, &set(&[1, 4])).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].v, 1);
        assert_eq!(r.steps[0].removed, vec![0, 1, 2]);
        assert_eq!(r.steps[0].new_edge, None);
        assert_eq!(r.labels, vec![3, 4, 5]);
        assert_eq!(r.graph, Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(r.y, set(&[4]));
        assert!(r.all_steps_dominated());
    }

    #[test]
    fn c6_closes_a_triangle() {
        let r = component_reduce(&cycle(6), &set(&[0, 3])).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].removed, vec![0, 1, 5]);
        assert_eq!(r.steps[0].new_edge, Some((2, 4)));
        assert_eq!(r.y, set(&[3]));
        assert_eq!(r.graph, cycle(3));
    }

    #[test]
    fn single_low_degree_vertex_is_identity() {
        let p2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let r = component_reduce(&p2, &set(&[0])).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.graph, p2);
        let k1 = Graph::empty(1);
        assert!(component_reduce(&k1, &set(&[0])).unwrap().steps.is_empty());
    }

    #[test]
    fn y_update_on_new_edge() {
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        // v = 2 removes {1,2,3}; attachments 0 and 4 are both in Y
        let r = component_reduce(&p5, &set(&[0, 2, 4])).unwrap();
        let step = &r.steps[0];
        assert_eq!(step.new_edge, Some((0, 4)));
        assert_eq!(
            step.y_update,
            Some(YUpdate {
                x1: 0,
                x2: 4,
                added: None
            })
        );
        assert_eq!(r.y, set(&[0]));
        assert!(r.all_steps_dominated());
    }

    #[test]
    fn long_cycle_step_counts() {
        let r = component_reduce(&cycle(12), &set(&[0, 3, 6, 9])).unwrap();
        for s in &r.steps {
            assert_eq!(s.removed.len(), 3);
        }
        assert_eq!(r.graph.n() + 3 * r.steps.len(), 12);
        assert!(r.graph.max_degree() <= 2);
        assert!(r.all_steps_dominated());
    }

    #[test]
    fn preconditions() {
        let k13 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(
            component_reduce(&k13, &set(&[0])),
            Err(MachineryError::Precondition(_))
        ));
        assert_eq!(
            component_reduce(&cycle(6), &set(&[0])),
            Err(MachineryError::NotDominating(2))
        );
    }
}
