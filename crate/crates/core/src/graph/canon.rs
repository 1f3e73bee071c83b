//! Canonical labeling by equitable refinement and individualization.
//!
//! The search tree branches on the first smallest non-singleton cell and
//! keeps the lexicographically smallest graph6 string over all leaves.
//! Automorphisms found along the way prune sibling branches that lie in the
//! same orbit of the pointwise stabilizer of the current prefix. This is
//! sized for corpus deduplication (tens of vertices), not as a general
//! isomorphism engine.

use super::{to_graph6, Graph, GraphError};

pub const MAX_CANON_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// graph6 encoding of the canonically relabeled graph.
    pub graph6: String,
    /// `labeling[v]` is the canonical id of original vertex `v`.
    pub labeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn graph(&self) -> Graph {
        super::parse_graph6(&self.graph6).expect("canonical string is valid graph6")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(GraphError::TooLarge {
            n,
            max: MAX_CANON_VERTICES,
        });
    }
    if n == 0 {
        return Ok(CanonicalForm {
            graph6: to_graph6(g),
            labeling: Vec::new(),
        });
    }
    let mut search = Search {
        g,
        best: None,
        automorphisms: Vec::new(),
    };
    let root = refine(g, vec![(0..n).collect()]);
    search.descend(root, &mut Vec::new());
    let (graph6, labeling) = search.best.expect("search visits at least one leaf");
    Ok(CanonicalForm { graph6, labeling })
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    g: &'a Graph,
    best: Option<(String, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Partition, prefix: &mut Vec<usize>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(target) = target else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&w| w != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            prefix.push(v);
            self.descend(refine(self.g, child), prefix);
            prefix.pop();
        }
    }

    /// Whether `v` is in the orbit of an explored vertex under the group
    /// generated by the known automorphisms fixing `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for perm in &self.automorphisms {
            if prefix.iter().any(|&p| perm[p] != p) {
                continue;
            }
            for (x, &y) in perm.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, cells: &Partition) {
        let n = self.g.n();
        let mut labeling = vec![0; n];
        for (pos, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = pos;
        }
        let relabeled = relabel(self.g, &labeling);
        let key = to_graph6(&relabeled);
        match &self.best {
            None => self.best = Some((key, labeling)),
            Some((best_key, best_labeling)) => {
                if key < *best_key {
                    self.best = Some((key, labeling));
                } else if key == *best_key {
                    // best^-1 . leaf maps v to the vertex sharing its canonical slot
                    let mut inv = vec![0; n];
                    for (v, &l) in best_labeling.iter().enumerate() {
                        inv[l] = v;
                    }
                    let perm: Vec<usize> = labeling.iter().map(|&l| inv[l]).collect();
                    if perm.iter().enumerate().any(|(i, &p)| i != p) {
                        self.automorphisms.push(perm);
                    }
                }
            }
        }
    }
}

pub(crate) fn relabel(g: &Graph, labeling: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (labeling[u], labeling[v])).collect();
    Graph::from_edges(g.n(), &edges).expect("relabeling a simple graph stays simple")
}

/// Splits cells until every vertex in a cell has the same number of
/// neighbors in every cell. Cell order depends only on structure.
pub(crate) fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Partition = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0u32; k];
                    for &w in g.neighbors(v) {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == k {
            return next;
        }
        cells = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph6;

    fn permute(g: &Graph, perm: &[usize]) -> Graph {
        relabel(g, perm)
    }

    #[test]
    fn k4_permutation_invariant() {
        let k4 = parse_graph6("C~").unwrap();
        let c = canonical_form(&k4).unwrap();
        assert_eq!(c.graph6, "C~");
        let p = permute(&k4, &[2, 0, 3, 1]);
        assert_eq!(canonical_form(&p).unwrap().graph6, c.graph6);
    }

    #[test]
    fn k33_and_prism_differ() {
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let prism = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert_ne!(
            canonical_form(&k33).unwrap().graph6,
            canonical_form(&prism).unwrap().graph6
        );
    }

    #[test]
    fn labeling_reproduces_canonical_graph() {
        let g = parse_graph6("DQc").unwrap();
        let c = canonical_form(&g).unwrap();
        assert_eq!(to_graph6(&relabel(&g, &c.labeling)), c.graph6);
        let again = canonical_form(&c.graph()).unwrap();
        assert_eq!(again.graph6, c.graph6);
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(
            canonical_form(&Graph::empty(65)),
            Err(GraphError::TooLarge { n: 65, .. })
        ));
    }
}
