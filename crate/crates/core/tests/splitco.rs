mod common;

use common::{brute_is_cobipartite, brute_is_split, gnp, naive_twin_free};
use ldpart::generators::{gen_cobipartite, gen_split, GenRng, GenSpec};
use ldpart::splitco::{cobipartite_partition, ld_partition_cobipartite, ld_partition_split, split_partition};
use ldpart::{check_ld_partition, Graph, GraphClass};
use proptest::prelude::*;

fn is_clique(g: &Graph, s: &ldpart::VertexSet) -> bool {
    s.iter().all(|u| s.iter().all(|v| u == v || g.has_edge(u, v)))
}

#[test]
fn recognisers_match_brute_force() {
    let mut rng = GenRng::new(11);
    for i in 0..600 {
        let n = 1 + i % 10;
        let g = gnp(n, [0.15, 0.5, 0.85][i % 3], &mut rng);
        let split = split_partition(&g);
        assert_eq!(split.is_ok(), brute_is_split(&g), "{g:?}");
        if let Ok(d) = split {
            assert!(is_clique(&g, &d.x));
            assert!(d.y.iter().all(|u| d.y.iter().all(|v| !g.has_edge(u, v))));
            assert_eq!(d.x.union(&d.y).len(), n);
        }
        let cob = cobipartite_partition(&g);
        assert_eq!(cob.is_ok(), brute_is_cobipartite(&g), "{g:?}");
        if let Ok(d) = cob {
            assert!(is_clique(&g, &d.x) && is_clique(&g, &d.y));
            assert!(d.x.is_disjoint(&d.y) && d.x.union(&d.y).len() == n);
        }
    }
}

#[test]
fn atlas_instances() {
    for g in common::atlas() {
        if !g.is_isolate_free() || !naive_twin_free(&g) {
            continue;
        }
        if brute_is_split(&g) {
            let p = ld_partition_split(&g).unwrap();
            assert!(check_ld_partition(&g, &p).unwrap().passed());
        }
        if brute_is_cobipartite(&g) {
            let p = ld_partition_cobipartite(&g).unwrap();
            assert!(check_ld_partition(&g, &p).unwrap().passed());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn split_constructor(n in 4usize..60, seed in any::<u64>(), p in 0.05f64..0.95) {
        let g = gen_split(&GenSpec::new(GraphClass::Split, n, seed).with_p(p)).unwrap();
        let d = split_partition(&g).unwrap();
        prop_assert!(d.s.len() <= 1);
        let part = ld_partition_split(&g).unwrap();
        prop_assert!(check_ld_partition(&g, &part).unwrap().passed());
        prop_assert!(part.min_side_len() <= n / 2);
    }

    #[test]
    fn cobipartite_constructor(n in 4usize..60, seed in any::<u64>(), p in 0.05f64..0.95) {
        let g = gen_cobipartite(&GenSpec::new(GraphClass::Cobipartite, n, seed).with_p(p)).unwrap();
        let d = cobipartite_partition(&g).unwrap();
        prop_assert!(d.s1.len() <= 1 && d.s2.len() <= 1);
        let part = ld_partition_cobipartite(&g).unwrap();
        prop_assert!(check_ld_partition(&g, &part).unwrap().passed());
        prop_assert!(part.min_side_len() <= n / 2);
    }
}
