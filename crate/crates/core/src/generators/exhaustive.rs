//! Connected cubic graphs up to isomorphism by breadth-first backtracking.
//!
//! Every connected graph has a breadth-first labeling from some root: vertex
//! `i` is adjacent only to earlier vertices and to later ones, and the later
//! neighbors it discovers get the next free labels. The search fills the
//! adjacency vertex by vertex in that shape. A leaf survives only if its root
//! has the largest local invariant and siblings appear in invariant order,
//! which discards most relabelings before the canonical form is taken.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::GeneratorError;
use crate::graph::{canonical_form, parse_graph6, Graph};

pub const MAX_EXHAUSTIVE_VERTICES: usize = 14;

/// One representative per isomorphism class of connected cubic graphs on `n`
/// vertices, sorted by canonical graph6.
pub fn enumerate_cubic_connected(n: usize) -> Result<Vec<Graph>, GeneratorError> {
    if n % 2 == 1 || n < 4 {
        return Err(GeneratorError::InvalidOrder(n));
    }
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(GeneratorError::TooLarge {
            n,
            max: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    let mut root = Builder::new(n);
    for v in 1..=3 {
        root.add_edge(0, v);
    }
    root.discovered = 4;
    root.parent[1..4].fill(0);
    // fan out over the choices made at vertices 1 and 2
    let mut frontier = Vec::new();
    root.expand(1, 3, &mut |b| frontier.push(b.clone()));
    let keys: BTreeSet<String> = frontier
        .par_iter()
        .map(|b| {
            let mut found = BTreeSet::new();
            let mut b = b.clone();
            b.expand(3, n, &mut |leaf| {
                if let Some(key) = leaf.accept() {
                    found.insert(key);
                }
            });
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(keys
        .iter()
        .map(|k| parse_graph6(k).expect("canonical keys are valid graph6"))
        .collect())
}

#[derive(Clone)]
struct Builder {
    n: usize,
    rows: Vec<u64>,
    deg: Vec<u8>,
    discovered: usize,
    /// The vertex whose expansion discovered each vertex.
    parent: Vec<usize>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            rows: vec![0; n],
            deg: vec![0; n],
            discovered: 1,
            parent: vec![usize::MAX; n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        self.deg[u] += 1;
        self.deg[v] += 1;
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
        self.deg[u] -= 1;
        self.deg[v] -= 1;
    }

    /// Completes vertices `i..stop`, calling `visit` once vertex `stop - 1`
    /// is full.
    fn expand(&mut self, i: usize, stop: usize, visit: &mut dyn FnMut(&Builder)) {
        if i == stop {
            visit(self);
            return;
        }
        if i >= self.discovered {
            return; // disconnected
        }
        let need = 3 - self.deg[i] as usize;
        let open: Vec<usize> = (i + 1..self.discovered).filter(|&j| self.deg[j] < 3).collect();
        for fresh in 0..=need {
            let old = need - fresh;
            if self.discovered + fresh > self.n || old > open.len() {
                continue;
            }
            let first_new = self.discovered;
            for j in first_new..first_new + fresh {
                self.add_edge(i, j);
                self.parent[j] = i;
            }
            self.discovered += fresh;
            let mut pick = Vec::with_capacity(old);
            self.choose(i, stop, &open, 0, old, &mut pick, visit);
            self.discovered -= fresh;
            for j in first_new..first_new + fresh {
                self.remove_edge(i, j);
                self.parent[j] = usize::MAX;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &mut self,
        i: usize,
        stop: usize,
        open: &[usize],
        from: usize,
        left: usize,
        pick: &mut Vec<usize>,
        visit: &mut dyn FnMut(&Builder),
    ) {
        if left == 0 {
            self.expand(i + 1, stop, visit);
            return;
        }
        for k in from..=open.len() - left {
            let j = open[k];
            self.add_edge(i, j);
            pick.push(j);
            self.choose(i, stop, open, k + 1, left - 1, pick, visit);
            pick.pop();
            self.remove_edge(i, j);
        }
    }

    /// Labeling-independent summary of a vertex: triangles, 4-cycles and the
    /// sizes of the next two distance layers.
    fn invariant(&self, v: usize) -> u64 {
        let nb = self.rows[v];
        let mut tri = 0u64;
        let mut sq = 0u64;
        let ns: Vec<usize> = bits(nb).collect();
        for (x, &a) in ns.iter().enumerate() {
            for &b in &ns[x + 1..] {
                tri += u64::from(self.rows[a] >> b & 1 == 1);
                sq += u64::from((self.rows[a] & self.rows[b] & !(1 << v)).count_ones());
            }
        }
        let ball1 = nb | 1 << v;
        let ring2 = bits(nb).fold(0u64, |acc, w| acc | self.rows[w]) & !ball1;
        let ring3 = bits(ring2).fold(0u64, |acc, w| acc | self.rows[w]) & !(ball1 | ring2);
        tri << 24 | sq << 16 | u64::from(ring2.count_ones()) << 8 | u64::from(ring3.count_ones())
    }

    fn accept(&self) -> Option<String> {
        let inv: Vec<u64> = (0..self.n).map(|v| self.invariant(v)).collect();
        if inv.iter().any(|&x| x > inv[0]) {
            return None;
        }
        for j in 1..self.n - 1 {
            if self.parent[j] == self.parent[j + 1] && inv[j] > inv[j + 1] {
                return None;
            }
        }
        let mut edges = Vec::with_capacity(3 * self.n / 2);
        for u in 0..self.n {
            edges.extend(bits(self.rows[u]).filter(|&w| w > u).map(|w| (u, w)));
        }
        let g = Graph::from_edges(self.n, &edges).expect("builder keeps the graph simple");
        Some(canonical_form(&g).expect("within canonical size limit").graph6)
    }
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            b
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = [4, 6, 8]
            .iter()
            .map(|&n| enumerate_cubic_connected(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5]);
    }

    #[test]
    fn k4_is_the_only_quartic_order() {
        let gs = enumerate_cubic_connected(4).unwrap();
        assert_eq!(crate::graph::to_graph6(&gs[0]), "C~");
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(enumerate_cubic_connected(7), Err(GeneratorError::InvalidOrder(7)));
        assert_eq!(enumerate_cubic_connected(2), Err(GeneratorError::InvalidOrder(2)));
        assert!(matches!(
            enumerate_cubic_connected(16),
            Err(GeneratorError::TooLarge { .. })
        ));
    }
}
