use serde::{Deserialize, Serialize};

use super::MachineryError;
use crate::graph::{Graph, VertexSet};
use crate::solvers::{CertKind, DominationCertificate};
use crate::structure::{has_adjacent_deg3_pair, AdjacentPairWitness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "move")]
pub enum Move {
    /// `vertex` left the set; `edge` was the internal edge being resolved.
    Drop { vertex: usize, edge: (usize, usize) },
    /// The degree-2 endpoint `from` was exchanged for its outside neighbor `to`.
    Swap {
        from: usize,
        to: usize,
        edge: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndependentizeOutcome {
    Independent {
        cert: DominationCertificate,
        moves: Vec<Move>,
    },
    /// No move improves the set. `edge` is an internal edge whose endpoints
    /// both have degree at least three.
    Stuck {
        set: VertexSet,
        edge: (usize, usize),
        witness: Option<AdjacentPairWitness>,
        moves: Vec<Move>,
    },
}

impl IndependentizeOutcome {
    pub fn moves(&self) -> &[Move] {
        match self {
            IndependentizeOutcome::Independent { moves, .. } | IndependentizeOutcome::Stuck { moves, .. } => moves,
        }
    }
}

fn score(g: &Graph, x: &VertexSet) -> (usize, usize) {
    (x.len(), g.internal_edges(x))
}

/// The first accepted move for `x`, trying internal edges in lexicographic
/// order and, per edge, drop before swap, first endpoint before second.
fn next_move(g: &Graph, x: &VertexSet) -> Option<(Move, VertexSet)> {
    let current = score(g, x);
    let improves = |cand: &VertexSet| g.dominates(cand) && score(g, cand) < current;
    let internal: Vec<(usize, usize)> = g.edges().filter(|(u, v)| x.contains(u) && x.contains(v)).collect();
    for &edge in &internal {
        let (a, b) = edge;
        for vertex in [a, b] {
            let mut cand = x.clone();
            cand.remove(&vertex);
            if improves(&cand) {
                return Some((Move::Drop { vertex, edge }, cand));
            }
        }
        for (from, partner) in [(a, b), (b, a)] {
            if g.degree(from) != 2 {
                continue;
            }
            let Some(to) = g.neighbors(from).iter().copied().find(|&w| w != partner) else {
                continue;
            };
            if x.contains(&to) || g.neighbors(to).iter().any(|&w| w != from && x.contains(&w)) {
                continue;
            }
            let mut cand = x.clone();
            cand.remove(&from);
            cand.insert(to);
            if improves(&cand) {
                return Some((Move::Swap { from, to, edge }, cand));
            }
        }
    }
    None
}

/// Applies drop and swap moves until the set is independent or no move
/// strictly decreases `(|X|, internal edges)`.
pub fn independentize(g: &Graph, x: &DominationCertificate) -> Result<IndependentizeOutcome, MachineryError> {
    if let Some(v) = g.first_undominated(x.set()) {
        return Err(MachineryError::NotDominating(v));
    }
    let mut set = x.set().clone();
    let mut moves = Vec::new();
    while g.internal_edges(&set) > 0 {
        match next_move(g, &set) {
            Some((m, next)) => {
                moves.push(m);
                set = next;
            }
            None => {
                let internal = || g.edges().filter(|(u, v)| set.contains(u) && set.contains(v));
                let edge = internal()
                    .find(|&(u, v)| g.degree(u) >= 3 && g.degree(v) >= 3)
                    .or_else(|| internal().next())
                    .expect("set has an internal edge");
                return Ok(IndependentizeOutcome::Stuck {
                    set,
                    edge,
                    witness: has_adjacent_deg3_pair(g),
                    moves,
                });
            }
        }
    }
    let cert = DominationCertificate::new(g, set, CertKind::IndependentDominating)?;
    Ok(IndependentizeOutcome::Independent { cert, moves })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(g: &Graph, vs: &[usize]) -> DominationCertificate {
        DominationCertificate::dominating(g, vs.iter().copied()).unwrap()
    }

    #[test]
    fn p4_swaps_to_the_end() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        match independentize(&p4, &cert(&p4, &[1, 2])).unwrap() {
            IndependentizeOutcome::Independent { cert, moves } => {
                assert_eq!(cert.to_vec(), vec![0, 2]);
                assert_eq!(
                    moves,
                    vec![Move::Swap {
                        from: 1,
                        to: 0,
                        edge: (1, 2)
                    }]
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn c4_swap() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        match independentize(&c4, &cert(&c4, &[0, 1])).unwrap() {
            IndependentizeOutcome::Independent { cert, moves } => {
                assert_eq!(cert.to_vec(), vec![1, 3]);
                assert_eq!(
                    moves,
                    vec![Move::Swap {
                        from: 0,
                        to: 3,
                        edge: (0, 1)
                    }]
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn independent_input_unchanged() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let out = independentize(&c4, &cert(&c4, &[0, 2])).unwrap();
        assert!(matches!(out, IndependentizeOutcome::Independent { ref cert, ref moves }
            if cert.to_vec() == vec![0, 2] && moves.is_empty()));
    }

    #[test]
    fn drop_removes_redundant_vertex() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let out = independentize(&p3, &cert(&p3, &[0, 1])).unwrap();
        assert!(matches!(out, IndependentizeOutcome::Independent { ref cert, .. } if cert.to_vec() == vec![1]));
    }

    #[test]
    fn k33_gets_stuck_with_witness() {
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        match independentize(&k33, &cert(&k33, &[0, 3])).unwrap() {
            IndependentizeOutcome::Stuck {
                edge, witness, moves, ..
            } => {
                assert_eq!(edge, (0, 3));
                assert!(witness.unwrap().verify(&k33));
                assert!(moves.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_dominating() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = DominationCertificate::dominating(&p4, [1, 2]).unwrap();
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(independentize(&p5, &x), Err(MachineryError::NotDominating(4)));
    }
}
