//! Exact domination and independent domination numbers.
//!
//! The branch-and-bound searches live in [`search`]; [`brute`] holds the
//! subset-enumeration oracles they are checked against.

pub mod brute;
mod search;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub use brute::{brute_force_gamma, brute_force_i, BRUTE_FORCE_MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("graph on {n} vertices exceeds the solver limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("vertex {vertex} is not dominated")]
    NotDominating { vertex: usize },
    #[error("set contains the edge {0}-{1} but was declared independent")]
    NotIndependent(usize, usize),
    #[error("vertex {0} is not in the graph")]
    VertexOutOfRange(usize),
}

/// Caps on a single solver call. Exceeding either aborts with
/// [`SolveError::BudgetExhausted`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            node_limit: 200_000_000,
            time_limit: Duration::from_secs(300),
        }
    }
}

impl SolveBudget {
    pub fn nodes(node_limit: u64) -> Self {
        SolveBudget {
            node_limit,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Dominating,
    IndependentDominating,
}

/// A verified dominating set together with its size and internal edge count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DominationCertificate {
    set: VertexSet,
    size: usize,
    internal_edges: usize,
    kind: CertKind,
}

impl DominationCertificate {
    /// Checks domination (and independence for `IndependentDominating`).
    pub fn new(g: &Graph, set: VertexSet, kind: CertKind) -> Result<Self, SolveError> {
        if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
            return Err(SolveError::VertexOutOfRange(v));
        }
        if let Some(vertex) = g.first_undominated(&set) {
            return Err(SolveError::NotDominating { vertex });
        }
        let internal_edges = g.internal_edges(&set);
        if kind == CertKind::IndependentDominating && internal_edges > 0 {
            let (u, v) = g
                .edges()
                .find(|(u, v)| set.contains(u) && set.contains(v))
                .expect("internal edge exists");
            return Err(SolveError::NotIndependent(u, v));
        }
        Ok(DominationCertificate {
            size: set.len(),
            set,
            internal_edges,
            kind,
        })
    }

    pub fn dominating(g: &Graph, set: impl IntoIterator<Item = usize>) -> Result<Self, SolveError> {
        Self::new(g, set.into_iter().collect(), CertKind::Dominating)
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn internal_edges(&self) -> usize {
        self.internal_edges
    }

    pub fn kind(&self) -> CertKind {
        self.kind
    }

    pub fn is_independent(&self) -> bool {
        self.internal_edges == 0
    }

    /// `X(R) = X ∩ R`.
    pub fn restrict(&self, r: &VertexSet) -> VertexSet {
        self.set.intersection(r).copied().collect()
    }

    /// Re-checks every stored field against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        matches!(Self::new(g, self.set.clone(), self.kind), Ok(c) if c == *self)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.set.iter().copied().collect()
    }
}

/// `⌈n/3⌉`.
pub fn reed_bound(n: usize) -> usize {
    n.div_ceil(3)
}

pub fn gamma_exact(g: &Graph, budget: &SolveBudget) -> Result<DominationCertificate, SolveError> {
    gamma_exact_with_stats(g, budget).map(|(c, _)| c)
}

pub fn gamma_exact_with_stats(
    g: &Graph,
    budget: &SolveBudget,
) -> Result<(DominationCertificate, SolveStats), SolveError> {
    let out = search::run(g, search::Mode::Optimize { independent: false }, budget)?;
    let set = out.best.expect("a dominating set always exists");
    let cert = DominationCertificate::new(g, set.into_iter().collect(), CertKind::Dominating)?;
    Ok((cert, SolveStats { nodes: out.nodes }))
}

pub fn i_exact(g: &Graph, budget: &SolveBudget) -> Result<DominationCertificate, SolveError> {
    i_exact_with_stats(g, budget).map(|(c, _)| c)
}

pub fn i_exact_with_stats(g: &Graph, budget: &SolveBudget) -> Result<(DominationCertificate, SolveStats), SolveError> {
    let out = search::run(g, search::Mode::Optimize { independent: true }, budget)?;
    let set = out.best.expect("a maximal independent set always exists");
    let cert = DominationCertificate::new(g, set.into_iter().collect(), CertKind::IndependentDominating)?;
    Ok((cert, SolveStats { nodes: out.nodes }))
}

/// Every dominating set of size γ(G), sorted by their ascending vertex lists.
pub fn enumerate_min_dsets(g: &Graph, budget: &SolveBudget) -> Result<Vec<DominationCertificate>, SolveError> {
    enumerate_min_dsets_with_stats(g, budget).map(|(c, _)| c)
}

pub fn enumerate_min_dsets_with_stats(
    g: &Graph,
    budget: &SolveBudget,
) -> Result<(Vec<DominationCertificate>, SolveStats), SolveError> {
    let (gamma, first) = gamma_exact_with_stats(g, budget)?;
    let out = search::run(
        g,
        search::Mode::Enumerate {
            independent: false,
            target: gamma.size(),
        },
        budget,
    )?;
    let mut sets = out.all;
    sets.sort();
    let certs = sets
        .into_iter()
        .map(|s| DominationCertificate::new(g, s.into_iter().collect(), CertKind::Dominating))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((
        certs,
        SolveStats {
            nodes: first.nodes + out.nodes,
        },
    ))
}

/// A minimum dominating set with the fewest internal edges; ties go to the
/// lexicographically smallest vertex list.
pub fn min_internal_edges_dset(g: &Graph, budget: &SolveBudget) -> Result<DominationCertificate, SolveError> {
    let all = enumerate_min_dsets(g, budget)?;
    Ok(min_internal_edges_of(&all).expect("at least one d-set").clone())
}

/// The entries of `dsets` attaining the minimum internal edge count, in input order.
pub fn min_internal_edge_subset(dsets: &[DominationCertificate]) -> Vec<DominationCertificate> {
    let Some(best) = dsets.iter().map(|c| c.internal_edges()).min() else {
        return Vec::new();
    };
    dsets.iter().filter(|c| c.internal_edges() == best).cloned().collect()
}

fn min_internal_edges_of(dsets: &[DominationCertificate]) -> Option<&DominationCertificate> {
    dsets
        .iter()
        .min_by(|a, b| (a.internal_edges(), a.to_vec()).cmp(&(b.internal_edges(), b.to_vec())))
}

/// The inclusion reading of "E(X) minimal": no minimum dominating set has an
/// internal edge set strictly contained in that of `x`.
pub fn has_inclusion_minimal_internal_edges(
    g: &Graph,
    x: &DominationCertificate,
    dsets: &[DominationCertificate],
) -> bool {
    let edges_of =
        |s: &VertexSet| -> Vec<(usize, usize)> { g.edges().filter(|(u, v)| s.contains(u) && s.contains(v)).collect() };
    let mine = edges_of(x.set());
    !dsets.iter().any(|d| {
        let theirs = edges_of(d.set());
        theirs.len() < mine.len() && theirs.iter().all(|e| mine.contains(e))
    })
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

    fn k33() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    fn b() -> SolveBudget {
        SolveBudget::default()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_exact(&k4(), &b()).unwrap().size(), 1);
        assert_eq!(gamma_exact(&petersen(), &b()).unwrap().size(), 3);
        assert_eq!(gamma_exact(&cycle(6), &b()).unwrap().size(), 2);
        assert_eq!(gamma_exact(&Graph::empty(0), &b()), Err(SolveError::EmptyGraph));
    }

    #[test]
    fn i_examples() {
        let c = i_exact(&k33(), &b()).unwrap();
        assert_eq!(c.size(), 3);
        assert!(c.set() == &[0, 1, 2].into() || c.set() == &[3, 4, 5].into());
        assert_eq!(i_exact(&k4(), &b()).unwrap().size(), 1);
        assert_eq!(i_exact(&petersen(), &b()).unwrap().size(), 3);
        assert_eq!(gamma_exact(&k33(), &b()).unwrap().size(), 2);
    }

    #[test]
    fn enumeration_examples() {
        let c4: Vec<_> = enumerate_min_dsets(&cycle(4), &b())
            .unwrap()
            .iter()
            .map(|c| c.to_vec())
            .collect();
        assert_eq!(
            c4,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(enumerate_min_dsets(&k4(), &b()).unwrap().len(), 4);
        // P4 = v1..v4 on ids 0..3
        let p4: Vec<_> = enumerate_min_dsets(&path(4), &b())
            .unwrap()
            .iter()
            .map(|c| c.to_vec())
            .collect();
        assert_eq!(p4, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn min_internal_edge_examples() {
        let c4 = min_internal_edges_dset(&cycle(4), &b()).unwrap();
        assert_eq!((c4.internal_edges(), c4.to_vec()), (0, vec![0, 2]));
        let p4 = min_internal_edges_dset(&path(4), &b()).unwrap();
        assert_eq!((p4.internal_edges(), p4.to_vec()), (0, vec![0, 2]));
        assert_eq!(min_internal_edges_dset(&k4(), &b()).unwrap().internal_edges(), 0);
    }

    #[test]
    fn reed_bound_values() {
        assert_eq!(reed_bound(60), 20);
        assert!(21 > reed_bound(60));
        assert_eq!(reed_bound(10), 4);
        assert_eq!(reed_bound(3), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let err = gamma_exact(&petersen(), &SolveBudget::nodes(3)).unwrap_err();
        assert!(matches!(err, SolveError::BudgetExhausted { .. }));
    }

    #[test]
    fn certificate_checks() {
        let p4 = path(4);
        assert_eq!(
            DominationCertificate::dominating(&p4, [0]),
            Err(SolveError::NotDominating { vertex: 2 })
        );
        assert_eq!(
            DominationCertificate::new(&p4, [1, 2].into(), CertKind::IndependentDominating),
            Err(SolveError::NotIndependent(1, 2))
        );
        let c = DominationCertificate::dominating(&p4, [1, 2]).unwrap();
        assert_eq!(c.internal_edges(), 1);
        assert_eq!(c.restrict(&[0, 1].into()), [1].into());
        assert!(c.verify(&p4));
        assert!(!c.verify(&path(5)));
    }

    #[test]
    fn inclusion_minimal_reading() {
        let p4 = path(4);
        let all = enumerate_min_dsets(&p4, &b()).unwrap();
        let adjacent = DominationCertificate::dominating(&p4, [1, 2]).unwrap();
        assert!(!has_inclusion_minimal_internal_edges(&p4, &adjacent, &all));
        assert!(has_inclusion_minimal_internal_edges(&p4, &all[0], &all));
    }
}
