//! Simple undirected graphs with dense vertex ids, plus the edit primitives
//! the transformation code is built from.

mod canon;
mod connectivity;
mod graph6;
mod trace;

pub use canon::{canonical_form, CanonicalForm, MAX_CANON_VERTICES};
pub use graph6::{parse_graph6, to_graph6, Graph6Error};
pub use trace::{TraceStep, TransformTrace};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::bitset::Bits;

/// Vertex sets exchanged through the public API are kept ordered so that
/// iteration is canonical.
pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edit {edit} rejected: {reason}")]
    EditPrecondition { edit: String, reason: String },
    #[error("graph on {n} vertices exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted ascending. Graphs with at most 64 vertices also
/// carry one adjacency bit-row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<u64>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    /// Caller guarantees symmetric, irreflexive, duplicate-free sorted lists.
    fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let rows = if n <= 64 {
            adj.iter()
                .map(|list| list.iter().fold(0u64, |acc, &w| acc | 1 << w))
                .collect()
        } else {
            Vec::new()
        };
        Graph { adj, rows, edge_count }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        if !self.rows.is_empty() {
            return self.rows[u] >> v & 1 == 1;
        }
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Adjacency bit-row of `v`; only available when `n <= 64`.
    pub fn row(&self, v: usize) -> Option<u64> {
        self.rows.get(v).copied()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_cubic(&self) -> bool {
        self.n() > 0 && self.adj.iter().all(|l| l.len() == 3)
    }

    /// Closed neighborhood rows as bitsets of width `W`.
    pub(crate) fn closed_rows<const W: usize>(&self) -> Vec<Bits<W>> {
        self.adj
            .iter()
            .enumerate()
            .map(|(v, list)| list.iter().copied().collect::<Bits<W>>().with(v))
            .collect()
    }

    pub(crate) fn check_vertices<'a, I>(&self, vs: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = &'a usize>,
    {
        for &v in vs {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange { v, n: self.n() });
            }
        }
        Ok(())
    }

    /// `N(W)`: every vertex adjacent to some member of `w`.
    pub fn open_neighborhood(&self, w: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_vertices(w)?;
        Ok(w.iter().flat_map(|&v| self.adj[v].iter().copied()).collect())
    }

    /// `N[W] = N(W) ∪ W`.
    pub fn closed_neighborhood(&self, w: &VertexSet) -> Result<VertexSet, GraphError> {
        let mut out = self.open_neighborhood(w)?;
        out.extend(w.iter().copied());
        Ok(out)
    }

    /// Whether `x` dominates the graph. Out-of-range ids never dominate.
    pub fn dominates(&self, x: &VertexSet) -> bool {
        self.first_undominated(x).is_none() && x.iter().all(|&v| v < self.n())
    }

    /// Smallest vertex outside `N[x]`, if any.
    pub fn first_undominated(&self, x: &VertexSet) -> Option<usize> {
        (0..self.n()).find(|&v| !x.contains(&v) && !self.adj[v].iter().any(|w| x.contains(w)))
    }

    /// Number of edges with both endpoints in `x`.
    pub fn internal_edges(&self, x: &VertexSet) -> usize {
        x.iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| w > v && x.contains(&w)).count())
            .sum()
    }

    pub fn is_independent(&self, x: &VertexSet) -> bool {
        self.internal_edges(x) == 0
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_of(0).len() == self.n()
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Partition of the vertex set into connected blocks, ordered by their
    /// smallest vertex, each annotated with its shape.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut assigned = vec![false; self.n()];
        let mut out = Vec::new();
        for v in 0..self.n() {
            if assigned[v] {
                continue;
            }
            let vertices = self.component_of(v);
            for &u in &vertices {
                assigned[u] = true;
            }
            let shape = self.shape_of(&vertices);
            out.push(Component { vertices, shape });
        }
        out
    }

    fn shape_of(&self, vertices: &[usize]) -> Shape {
        let k = vertices.len();
        if k == 1 {
            return Shape::Isolated;
        }
        let edges: usize = vertices.iter().map(|&v| self.degree(v)).sum::<usize>() / 2;
        let max_deg = vertices.iter().map(|&v| self.degree(v)).max().unwrap_or(0);
        if max_deg <= 2 && edges + 1 == k {
            Shape::Path
        } else if max_deg == 2 && edges == k && vertices.iter().all(|&v| self.degree(v) == 2) {
            Shape::Cycle
        } else {
            Shape::Other
        }
    }

    /// Subgraph induced by `keep`; vertices are renumbered in ascending order.
    /// Returns the graph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_vertices(keep)?;
        let old_ids: Vec<usize> = keep.iter().copied().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = old_ids
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| new_id[w] != usize::MAX)
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect();
        Ok((Graph::from_sorted_adjacency(adj), old_ids))
    }

    /// `G - D` for a vertex set `D`, with ids compacted. The map sends old ids
    /// to their new id, or `None` for deleted vertices.
    pub fn delete_vertices(&self, d: &VertexSet) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
        self.check_vertices(d)?;
        let keep: VertexSet = (0..self.n()).filter(|v| !d.contains(v)).collect();
        let (g, old_ids) = self.induced_subgraph(&keep)?;
        let mut map = vec![None; self.n()];
        for (new, &old) in old_ids.iter().enumerate() {
            map[old] = Some(new);
        }
        Ok((g, map))
    }

    /// Removes a set of edges at once. Every edge must be present.
    pub fn delete_edges(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = self.adj.clone();
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(GraphError::EditPrecondition {
                    edit: format!("delete_edge({u},{v})"),
                    reason: "edge absent".into(),
                });
            }
            adj[u].retain(|&w| w != v);
            adj[v].retain(|&w| w != u);
        }
        Ok(Graph::from_sorted_adjacency(adj))
    }

    pub fn apply_edit(&self, edit: &GraphEdit) -> Result<EditOutcome, GraphError> {
        let n = self.n();
        let reject = |reason: &str| GraphError::EditPrecondition {
            edit: edit.kind.to_string(),
            reason: reason.to_string(),
        };
        let identity = || (0..n).map(Some).collect::<Vec<_>>();
        match edit.kind {
            EditKind::DeleteEdge(u, v) => {
                if !self.has_edge(u, v) {
                    return Err(reject("edge absent"));
                }
                let mut adj = self.adj.clone();
                adj[u].retain(|&w| w != v);
                adj[v].retain(|&w| w != u);
                Ok(EditOutcome {
                    graph: Graph::from_sorted_adjacency(adj),
                    vertex_map: identity(),
                })
            }
            EditKind::AddEdge(u, v) => {
                if u >= n || v >= n {
                    return Err(reject("vertex out of range"));
                }
                if u == v {
                    return Err(reject("self-loop"));
                }
                if self.has_edge(u, v) {
                    return Err(reject("edge already present"));
                }
                let mut adj = self.adj.clone();
                insert_sorted(&mut adj[u], v);
                insert_sorted(&mut adj[v], u);
                Ok(EditOutcome {
                    graph: Graph::from_sorted_adjacency(adj),
                    vertex_map: identity(),
                })
            }
            EditKind::SubdivideEdge { u, v, new_id } => {
                if !self.has_edge(u, v) {
                    return Err(reject("edge absent"));
                }
                if new_id != n {
                    return Err(reject(&format!("new vertex id must be {n}")));
                }
                let mut adj = self.adj.clone();
                adj[u].retain(|&w| w != v);
                adj[v].retain(|&w| w != u);
                insert_sorted(&mut adj[u], new_id);
                insert_sorted(&mut adj[v], new_id);
                adj.push(vec![u.min(v), u.max(v)]);
                Ok(EditOutcome {
                    graph: Graph::from_sorted_adjacency(adj),
                    vertex_map: identity(),
                })
            }
            EditKind::DeleteVertices(ref set) => {
                if set.iter().any(|&v| v >= n) {
                    return Err(reject("vertex out of range"));
                }
                let d: VertexSet = set.iter().copied().collect();
                let (graph, vertex_map) = self.delete_vertices(&d)?;
                Ok(EditOutcome { graph, vertex_map })
            }
        }
    }
}

fn insert_sorted(list: &mut Vec<usize>, v: usize) {
    let pos = list.binary_search(&v).unwrap_or_else(|p| p);
    list.insert(pos, v);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Isolated,
    Path,
    Cycle,
    Other,
}

impl Shape {
    /// Isolated vertices, paths and cycles.
    pub fn is_path_like(self) -> bool {
        !matches!(self, Shape::Other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub shape: Shape,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EditKind {
    DeleteEdge(usize, usize),
    /// Replaces `uv` by `u-new_id-v`; `new_id` must equal the current vertex count.
    SubdivideEdge {
        u: usize,
        v: usize,
        new_id: usize,
    },
    DeleteVertices(Vec<usize>),
    AddEdge(usize, usize),
}

impl fmt::Display for EditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditKind::DeleteEdge(u, v) => write!(f, "delete_edge({u},{v})"),
            EditKind::SubdivideEdge { u, v, new_id } => write!(f, "subdivide_edge({u},{v},{new_id})"),
            EditKind::DeleteVertices(set) => write!(f, "delete_vertices({set:?})"),
            EditKind::AddEdge(u, v) => write!(f, "add_edge({u},{v})"),
        }
    }
}

/// A single graph edit with a free-form justification tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphEdit {
    pub kind: EditKind,
    pub tag: String,
}

impl GraphEdit {
    pub fn new(kind: EditKind, tag: impl Into<String>) -> Self {
        GraphEdit { kind, tag: tag.into() }
    }
}

#[derive(Clone, Debug)]
pub struct EditOutcome {
    pub graph: Graph,
    /// Old id to new id; `None` for deleted vertices. Vertices created by the
    /// edit are not listed.
    pub vertex_map: Vec<Option<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { v: 2, n: 2 })
        ));
    }

    #[test]
    fn closed_neighborhood_examples() {
        let c4 = cycle(4);
        let w: VertexSet = [0].into();
        assert_eq!(c4.closed_neighborhood(&w).unwrap(), [0, 1, 3].into());
        assert!(c4.closed_neighborhood(&VertexSet::new()).unwrap().is_empty());
        let all: VertexSet = (0..4).collect();
        assert_eq!(c4.closed_neighborhood(&all).unwrap(), all);
        assert!(c4.closed_neighborhood(&[9].into()).is_err());
    }

    #[test]
    fn subdivide_p2_gives_p3() {
        let p2 = path(2);
        let out = p2
            .apply_edit(&GraphEdit::new(EditKind::SubdivideEdge { u: 0, v: 1, new_id: 2 }, "t"))
            .unwrap();
        assert_eq!(out.graph, Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap());
        let bad = p2.apply_edit(&GraphEdit::new(EditKind::SubdivideEdge { u: 0, v: 1, new_id: 5 }, "t"));
        assert!(matches!(bad, Err(GraphError::EditPrecondition { .. })));
    }

    #[test]
    fn delete_vertex_of_k4_gives_k3() {
        let out = k4()
            .apply_edit(&GraphEdit::new(EditKind::DeleteVertices(vec![1]), "t"))
            .unwrap();
        assert_eq!(out.graph, cycle(3));
        assert_eq!(out.vertex_map, vec![Some(0), None, Some(1), Some(2)]);
    }

    #[test]
    fn add_existing_edge_is_an_error() {
        let err = k4()
            .apply_edit(&GraphEdit::new(EditKind::AddEdge(0, 1), "t"))
            .unwrap_err();
        match err {
            GraphError::EditPrecondition { edit, .. } => assert_eq!(edit, "add_edge(0,1)"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(k4()
            .apply_edit(&GraphEdit::new(EditKind::DeleteEdge(0, 0), "t"))
            .is_err());
    }

    #[test]
    fn component_shapes() {
        // P2 on {0,1} and P4 on {2,3,4,5}
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (3, 4), (4, 5)]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.shape == Shape::Path));
        assert_eq!(k4().connected_components()[0].shape, Shape::Other);
        let iso = Graph::empty(3).connected_components();
        assert_eq!(iso.len(), 3);
        assert!(iso.iter().all(|c| c.shape == Shape::Isolated));
        assert_eq!(cycle(5).connected_components()[0].shape, Shape::Cycle);
    }

    #[test]
    fn domination_helpers() {
        let p4 = path(4);
        assert!(p4.dominates(&[1, 2].into()));
        assert_eq!(p4.first_undominated(&[0].into()), Some(2));
        assert_eq!(p4.internal_edges(&[1, 2].into()), 1);
        assert!(p4.is_independent(&[0, 2].into()));
    }
}
