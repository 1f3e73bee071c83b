use domlab::generators::{enumerate_cubic_connected, random_cubic};
use domlab::graph::{parse_graph6, VertexSet};
use domlab::machinery::{apply_replacement, check_fact_t_dset, compute_t, FactVerdict, Violation};
use domlab::solvers::{enumerate_min_dsets, gamma_exact, SolveBudget};

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

#[test]
fn every_t_member_has_exactly_one_anchor() {
    let mut graphs = enumerate_cubic_connected(10).unwrap();
    graphs.extend((0..20).map(|s| random_cubic(14, s).unwrap()));
    for g in graphs {
        for x in enumerate_min_dsets(&g, &SolveBudget::default()).unwrap() {
            let t = compute_t(&g, x.set()).unwrap();
            for &v in &t.members {
                let in_y: Vec<_> = g.neighbors(v).iter().filter(|w| x.set().contains(w)).collect();
                assert_eq!(in_y, vec![&t.anchor[&v]]);
            }
        }
    }
}

#[test]
fn full_replacement_keeps_domination() {
    for g in enumerate_cubic_connected(12).unwrap() {
        let x = gamma_exact(&g, &SolveBudget::default()).unwrap();
        let t = compute_t(&g, x.set()).unwrap();
        let (gs, trace) = apply_replacement(&g, x.set(), &t.members).unwrap();
        assert_eq!(gs.n(), g.n() + trace.new_vertices());
        let y: VertexSet = x.set().union(&t.members).copied().collect();
        assert!(gs.dominates(&y));
    }
}

#[test]
fn replacement_can_leave_a_smaller_dset() {
    // Y = {0,1} is minimum on G - {2,3} (a 4-cycle), yet G({2,3}) has a
    // dominating set of size 3 < |Y ∪ S| = 4.
    let g = parse_graph6("ELv_").unwrap();
    let v = check_fact_t_dset(&g, &set(&[0, 1]), &set(&[2, 3]), &SolveBudget::default()).unwrap();
    match v {
        FactVerdict::Violated {
            violation: Violation::NotMinimum { claimed, gamma, .. },
        } => assert_eq!((claimed, gamma), (4, 3)),
        other => panic!("unexpected {other:?}"),
    }
}
