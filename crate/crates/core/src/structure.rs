//! Forbidden-pattern predicates (induced claw, double star) and the verifier
//! for the disjoint-neighborhood property of minimum dominating sets with
//! fewest internal edges.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::solvers::{
    enumerate_min_dsets, has_inclusion_minimal_internal_edges, DominationCertificate, SolveBudget, SolveError,
};

/// Induced `K_{1,3}`: a center and three pairwise non-adjacent neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

impl ClawWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let [a, b, c] = self.leaves;
        let distinct = a != b && b != c && a != c && !self.leaves.contains(&self.center);
        distinct
            && self.leaves.iter().all(|&l| g.has_edge(self.center, l))
            && !g.has_edge(a, b)
            && !g.has_edge(a, c)
            && !g.has_edge(b, c)
    }
}

/// Two adjacent centers, each with two further leaves; six distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleStarWitness {
    pub x: usize,
    pub y: usize,
    pub leaves_x: [usize; 2],
    pub leaves_y: [usize; 2],
}

impl DoubleStarWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let all = [
            self.x,
            self.y,
            self.leaves_x[0],
            self.leaves_x[1],
            self.leaves_y[0],
            self.leaves_y[1],
        ];
        let distinct = all.iter().collect::<std::collections::BTreeSet<_>>().len() == 6;
        distinct
            && g.has_edge(self.x, self.y)
            && self.leaves_x.iter().all(|&l| g.has_edge(self.x, l))
            && self.leaves_y.iter().all(|&l| g.has_edge(self.y, l))
    }
}

/// Adjacent vertices that both have degree at least three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacentPairWitness {
    pub x: usize,
    pub y: usize,
}

impl AdjacentPairWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        g.has_edge(self.x, self.y) && g.degree(self.x) >= 3 && g.degree(self.y) >= 3
    }
}

pub fn find_claw(g: &Graph) -> Option<ClawWitness> {
    for c in 0..g.n() {
        let nb = g.neighbors(c);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                for &d in &nb[j + 1..] {
                    if !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return Some(ClawWitness {
                            center: c,
                            leaves: [a, b, d],
                        });
                    }
                }
            }
        }
    }
    None
}

/// Exhaustive over edges and leaf pairs, so overlapping leaf candidates are
/// resolved exactly.
pub fn find_double_star(g: &Graph) -> Option<DoubleStarWitness> {
    for (x, y) in g.edges() {
        let lx: Vec<usize> = g.neighbors(x).iter().copied().filter(|&w| w != y).collect();
        let ly: Vec<usize> = g.neighbors(y).iter().copied().filter(|&w| w != x).collect();
        for (i, &a) in lx.iter().enumerate() {
            for &b in &lx[i + 1..] {
                for (k, &c) in ly.iter().enumerate() {
                    if c == a || c == b {
                        continue;
                    }
                    for &d in &ly[k + 1..] {
                        if d != a && d != b {
                            return Some(DoubleStarWitness {
                                x,
                                y,
                                leaves_x: [a, b],
                                leaves_y: [c, d],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn has_adjacent_deg3_pair(g: &Graph) -> Option<AdjacentPairWitness> {
    g.edges()
        .find(|&(x, y)| g.degree(x) >= 3 && g.degree(y) >= 3)
        .map(|(x, y)| AdjacentPairWitness { x, y })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum LemmaVerdict {
    Holds {
        /// Whether the set is also minimal under edge-set inclusion among d-sets.
        inclusion_minimal: bool,
        edges_checked: usize,
    },
    Violated {
        v1: usize,
        v2: usize,
        w: usize,
        /// A vertex of `N[{v1,v2}] ∩ N[w]`.
        shared: usize,
    },
    NotApplicable {
        reason: String,
    },
}

/// Checks `N[{v1,v2}] ∩ N[w] = ∅` for every internal edge `v1v2` of `x` and
/// every `w ∈ x \ {v1,v2}`. Only applies when Δ ≤ 3, |x| ≥ 3, x has an
/// internal edge, and x is a minimum dominating set with the fewest internal
/// edges.
pub fn verify_lemma_disjoint(
    g: &Graph,
    x: &DominationCertificate,
    budget: &SolveBudget,
) -> Result<LemmaVerdict, SolveError> {
    if let Some(vertex) = g.first_undominated(x.set()) {
        return Err(SolveError::NotDominating { vertex });
    }
    let na = |reason: String| Ok(LemmaVerdict::NotApplicable { reason });
    if g.max_degree() > 3 {
        return na(format!("max degree {} > 3", g.max_degree()));
    }
    if x.size() < 3 {
        return na(format!("|X| = {} < 3", x.size()));
    }
    if x.internal_edges() == 0 {
        return na("X is independent".into());
    }
    let dsets = enumerate_min_dsets(g, budget)?;
    let gamma = dsets[0].size();
    if x.size() != gamma {
        return na(format!("|X| = {} but gamma = {gamma}", x.size()));
    }
    let best = dsets.iter().map(|d| d.internal_edges()).min().unwrap_or(0);
    if x.internal_edges() != best {
        return na(format!(
            "X has {} internal edges, minimum is {best}",
            x.internal_edges()
        ));
    }
    verify_disjoint_unchecked(g, x, &dsets)
}

/// The neighborhood check alone, for callers that already established the
/// preconditions against `dsets` (all minimum dominating sets of `g`).
pub fn verify_disjoint_unchecked(
    g: &Graph,
    x: &DominationCertificate,
    dsets: &[DominationCertificate],
) -> Result<LemmaVerdict, SolveError> {
    let set = x.set();
    let closed = |vs: &[usize]| -> VertexSet {
        let w: VertexSet = vs.iter().copied().collect();
        g.closed_neighborhood(&w).expect("vertices in range")
    };
    let mut edges_checked = 0;
    for (v1, v2) in g.edges().filter(|(u, v)| set.contains(u) && set.contains(v)) {
        edges_checked += 1;
        let pair = closed(&[v1, v2]);
        for &w in set.iter().filter(|&&w| w != v1 && w != v2) {
            if let Some(&shared) = pair.intersection(&closed(&[w])).next() {
                return Ok(LemmaVerdict::Violated { v1, v2, w, shared });
            }
        }
    }
    Ok(LemmaVerdict::Holds {
        inclusion_minimal: has_inclusion_minimal_internal_edges(g, x, dsets),
        edges_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k33() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap()
    }

    /// x=0, y=1 adjacent, both also adjacent to a=2 and b=3; a pendant c=4 on a.
    fn shared_leaf() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn claw_examples() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let w = find_claw(&star).unwrap();
        assert_eq!(w.center, 0);
        assert!(w.verify(&star));
        assert_eq!(find_claw(&k4()), None);
        let w = find_claw(&k33()).unwrap();
        assert!(w.verify(&k33()));
    }

    #[test]
    fn double_star_examples() {
        let w = find_double_star(&k33()).unwrap();
        assert!(w.verify(&k33()));
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(find_double_star(&c6), None);
        assert_eq!(find_double_star(&shared_leaf()), None);
        assert_eq!(find_double_star(&k4()), None);
    }

    #[test]
    fn adjacent_pair_examples() {
        assert!(has_adjacent_deg3_pair(&k33()).unwrap().verify(&k33()));
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(has_adjacent_deg3_pair(&c6), None);
        assert_eq!(
            has_adjacent_deg3_pair(&shared_leaf()),
            Some(AdjacentPairWitness { x: 0, y: 1 })
        );
    }

    #[test]
    fn lemma_not_applicable_cases() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = DominationCertificate::dominating(&p4, [1, 2]).unwrap();
        let v = verify_lemma_disjoint(&p4, &x, &SolveBudget::default()).unwrap();
        assert!(matches!(v, LemmaVerdict::NotApplicable { ref reason } if reason.contains("< 3")));
        let bad = DominationCertificate::dominating(&p4, [0, 1, 2, 3]).unwrap();
        let not_dom = verify_lemma_disjoint(&Graph::from_edges(5, &[(0, 1)]).unwrap(), &bad, &SolveBudget::default());
        assert!(not_dom.is_err());
    }

    #[test]
    fn disjoint_check_reports_intersections() {
        // P7 with X = {1,2,4}: 4's neighborhood {3,4,5} meets N[{1,2}] = {0,1,2,3}
        let p7 = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        let x = DominationCertificate::dominating(&p7, [1, 2, 4, 6]).unwrap();
        let v = verify_disjoint_unchecked(&p7, &x, &[]).unwrap();
        assert_eq!(
            v,
            LemmaVerdict::Violated {
                v1: 1,
                v2: 2,
                w: 4,
                shared: 3
            }
        );
    }
}
