//! Cubic graphs of connectivity one built from a fixed gadget.
//!
//! The gadget is K4 on `a=0, b=1, c=2, d=3` with the edge `ab` subdivided by
//! the stub `s=4`:
//!
//! ```text
//! 0: 2 3 4
//! 1: 2 3 4
//! 2: 0 1 3
//! 3: 0 1 2
//! 4: 0 1      (one free slot)
//! ```
//!
//! A chain of order `k` is a spine path `p_1 .. p_k` with a gadget hanging off
//! every spine vertex by a bridge to its stub, plus one more gadget on each
//! end of the spine (two on `p_1` when `k = 1`). Every spine vertex then has
//! degree three and the chain has `6k + 10` vertices.

use super::GeneratorError;
use crate::graph::Graph;

const GADGET_EDGES: [(usize, usize); 7] = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3)];
const GADGET_STUB: usize = 4;
const GADGET_ORDER: usize = 5;

/// The gadget alone; vertex 4 has degree two.
pub fn gadget() -> Graph {
    Graph::from_edges(GADGET_ORDER, &GADGET_EDGES).expect("gadget table is simple")
}

pub fn gadget_chain(k: usize) -> Result<Graph, GeneratorError> {
    if k == 0 {
        return Err(GeneratorError::EmptyChain);
    }
    let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    let mut next = k;
    let mut hang = |spine: usize, edges: &mut Vec<(usize, usize)>| {
        edges.extend(GADGET_EDGES.iter().map(|&(u, v)| (next + u, next + v)));
        edges.push((spine, next + GADGET_STUB));
        next += GADGET_ORDER;
    };
    for p in 0..k {
        hang(p, &mut edges);
    }
    hang(0, &mut edges);
    hang(k - 1, &mut edges);
    Ok(Graph::from_edges(6 * k + 10, &edges).expect("chain construction is simple"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_are_cubic_with_bridges() {
        for k in 1..=5 {
            let g = gadget_chain(k).unwrap();
            assert_eq!(g.n(), 6 * k + 10);
            assert!(g.is_cubic() && g.is_connected(), "k = {k}");
        }
        assert_eq!(gadget_chain(1).unwrap().vertex_connectivity(), 1);
        assert_eq!(gadget_chain(3).unwrap().vertex_connectivity(), 1);
        assert_eq!(gadget_chain(0), Err(GeneratorError::EmptyChain));
    }

    #[test]
    fn gadget_degrees() {
        let g = gadget();
        let degs: Vec<usize> = (0..5).map(|v| g.degree(v)).collect();
        assert_eq!(degs, vec![3, 3, 3, 3, 2]);
    }
}
