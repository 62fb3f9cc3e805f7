mod common;

use common::{mask, naive_dominating, naive_ld, naive_locating, Adj};
use ldpart::check::{FailureKind, Witness};
use ldpart::{check_dominating, check_ld_partition, check_ld_set, check_locating, Graph, LdPartition, VertexSet};
use proptest::prelude::*;

fn graph_and_set() -> impl Strategy<Value = (Graph, VertexSet)> {
    (1usize..=10).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (proptest::collection::vec(any::<bool>(), pairs), proptest::collection::vec(any::<bool>(), n)).prop_map(
            move |(es, ds)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if es[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                let d: VertexSet = (0..n).filter(|&v| ds[v]).collect();
                (Graph::from_edges(n, edges).unwrap(), d)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn agrees_with_definitions((g, d) in graph_and_set()) {
        let a = Adj::of(&g);
        let m = mask(g.n(), d.iter());
        prop_assert_eq!(check_dominating(&g, &d).unwrap().passed(), naive_dominating(&a, &m));
        prop_assert_eq!(check_locating(&g, &d).unwrap().passed(), naive_locating(&a, &m));
        prop_assert_eq!(check_ld_set(&g, &d).unwrap().passed(), naive_ld(&a, &m));
    }

    #[test]
    fn witnesses_replay((g, d) in graph_and_set()) {
        let a = Adj::of(&g);
        let m = mask(g.n(), d.iter());
        let r = check_ld_set(&g, &d).unwrap();
        match (r.failure_kind, r.witness) {
            (FailureKind::None, None) => {}
            (FailureKind::Undominated, Some(Witness::Vertex(v))) => {
                prop_assert!(!m[v] && a.trace(v, &m).is_empty());
            }
            (FailureKind::Collision, Some(Witness::Pair(u, v))) => {
                prop_assert!(u != v && !m[u] && !m[v]);
                prop_assert_eq!(a.trace(u, &m), a.trace(v, &m));
            }
            other => prop_assert!(false, "unexpected report {:?}", other),
        }
    }

    #[test]
    fn whole_vertex_set_passes((g, _d) in graph_and_set()) {
        prop_assert!(check_ld_set(&g, &VertexSet::full(g.n())).unwrap().passed());
    }

    #[test]
    fn partition_is_both_sides((g, d) in graph_and_set()) {
        let rest = VertexSet::full(g.n()).difference(&d);
        let p = LdPartition::new(d.clone(), rest.clone());
        let expect = check_ld_set(&g, &d).unwrap().passed() && check_ld_set(&g, &rest).unwrap().passed();
        prop_assert_eq!(check_ld_partition(&g, &p).unwrap().passed(), expect);
    }
}

#[test]
fn examples() {
    let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert!(check_ld_set(&p4, &VertexSet::from([0, 3])).unwrap().passed());
    let r = check_ld_set(&p4, &VertexSet::from([0])).unwrap();
    assert_eq!(r.failure_kind, FailureKind::Undominated);
    let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
    assert!(check_ld_set(&k2, &VertexSet::from([0])).unwrap().passed());
    let fan4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
    let p = LdPartition::new(VertexSet::from([0, 1]), VertexSet::from([2, 3]));
    assert!(check_ld_partition(&fan4, &p).unwrap().passed());
    let p = LdPartition::new(VertexSet::from([0, 2]), VertexSet::from([1, 3]));
    assert!(check_ld_partition(&p4, &p).unwrap().passed());
    let p = LdPartition::new(VertexSet::from([0, 1, 2]), VertexSet::from([2, 3]));
    let r = check_ld_partition(&p4, &p).unwrap();
    assert_eq!((r.failure_kind, r.witness), (FailureKind::Overlap, Some(Witness::Vertex(2))));
    let p = LdPartition::new(VertexSet::from([0, 1]), VertexSet::from([3]));
    assert_eq!(check_ld_partition(&p4, &p).unwrap().failure_kind, FailureKind::NotCover);
}
