use super::GeneratorError;
use crate::graph::Graph;

/// Accepted fixture names. `cN` and `pN` take any order (`c6`, `p4`).
pub const NAMED_GRAPHS: &[&str] = &[
    "k4",
    "k33",
    "prism",
    "petersen",
    "moebius-kantor",
    "cube",
    "claw",
    "k13",
    "cN",
    "pN",
];

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

/// Generalized Petersen graph: outer `n`-cycle, inner star polygon `{n/k}`, spokes.
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut e = Vec::with_capacity(3 * n);
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((n + i, n + (i + k) % n));
        e.push((i, n + i));
    }
    Graph::from_edges(2 * n, &e).expect("generalized Petersen graph is simple")
}

/// Fixture graphs by name (case-insensitive).
pub fn named_graph(name: &str) -> Result<Graph, GeneratorError> {
    let unknown = || GeneratorError::UnknownName(name.to_string());
    let lower = name.to_ascii_lowercase();
    let g = match lower.as_str() {
        "k4" => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "k33" | "k3,3" => Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        ),
        "prism" => Ok(generalized_petersen(3, 1)),
        "petersen" => Ok(generalized_petersen(5, 2)),
        "moebius-kantor" => Ok(generalized_petersen(8, 3)),
        "cube" => Ok(generalized_petersen(4, 1)),
        "claw" | "k13" => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]),
        _ => {
            let (Some(kind), Some(digits)) = (lower.get(..1), lower.get(1..)) else {
                return Err(unknown());
            };
            let n: usize = digits.parse().map_err(|_| unknown())?;
            match kind {
                "c" if n >= 3 => Graph::from_edges(n, &cycle_edges(n)),
                "p" if n >= 1 => {
                    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                    Graph::from_edges(n, &e)
                }
                _ => return Err(unknown()),
            }
        }
    };
    Ok(g.expect("fixture tables are simple"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_form, parse_graph6};

    fn girth(g: &Graph) -> usize {
        let mut best = usize::MAX;
        for s in 0..g.n() {
            let mut dist = vec![usize::MAX; g.n()];
            let mut parent = vec![usize::MAX; g.n()];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn petersen_properties() {
        let g = named_graph("petersen").unwrap();
        assert_eq!((g.n(), g.edge_count(), girth(&g)), (10, 15, 5));
        assert!(g.is_cubic());
    }

    #[test]
    fn fixtures() {
        assert_eq!(named_graph("k4").unwrap(), parse_graph6("C~").unwrap());
        let c6 = named_graph("c6").unwrap();
        assert_eq!((c6.n(), c6.edge_count(), c6.max_degree()), (6, 6, 2));
        assert_eq!(named_graph("P4").unwrap().edge_count(), 3);
        let mk = named_graph("moebius-kantor").unwrap();
        assert_eq!((mk.n(), girth(&mk)), (16, 6));
        assert_eq!(girth(&named_graph("cube").unwrap()), 4);
        let prism = canonical_form(&named_graph("prism").unwrap()).unwrap();
        let k33 = canonical_form(&named_graph("k33").unwrap()).unwrap();
        assert_ne!(prism.graph6, k33.graph6);
        assert_eq!(named_graph("claw").unwrap(), named_graph("k13").unwrap());
    }

    #[test]
    fn unknown_names() {
        for bad in ["dodecahedron", "c2", "p0", "x5", ""] {
            assert!(matches!(named_graph(bad), Err(GeneratorError::UnknownName(_))), "{bad}");
        }
    }
}
