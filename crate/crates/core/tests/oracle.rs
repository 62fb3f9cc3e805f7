mod common;

use common::{gnp, naive_gamma, naive_partition_exists};
use ldpart::generators::GenRng;
use ldpart::oracle::{gamma_ld, ld_partition_exists, OracleCaps};
use ldpart::{check_ld_partition, check_ld_set, Graph, OracleError};

fn fan(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    edges.extend((1..n - 1).map(|i| (i, i + 1)));
    Graph::from_edges(n, edges).unwrap()
}

#[test]
fn fixtures() {
    let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(gamma_ld(&p4, 18).unwrap().gamma_ld, Some(2));
    assert_eq!(gamma_ld(&Graph::from_edges(2, [(0, 1)]).unwrap(), 18).unwrap().gamma_ld, Some(1));
    assert_eq!(gamma_ld(&fan(5), 18).unwrap().gamma_ld, Some(2));
    let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let r = ld_partition_exists(&p3, 20).unwrap();
    assert!(r.partition.is_none() && r.exhausted);
    assert!(ld_partition_exists(&fan(4), 20).unwrap().partition.is_some());
}

#[test]
fn caps() {
    let g = Graph::empty(12);
    assert_eq!(gamma_ld(&g, 10), Err(OracleError::CapExceeded { n: 12, cap: 10 }));
    assert!(OracleCaps::new(64, 10).is_err());
}

#[test]
fn agrees_with_brute_force() {
    let mut rng = GenRng::new(42);
    for i in 0..150 {
        let n = 1 + i % 9;
        let g = gnp(n, [0.2, 0.5, 0.8][i % 3], &mut rng);
        let gamma = gamma_ld(&g, 18).unwrap();
        assert_eq!(gamma.gamma_ld, Some(naive_gamma(&g)), "{g:?}");
        let w = gamma.witness_set.unwrap();
        assert!(check_ld_set(&g, &w).unwrap().passed());
        let part = ld_partition_exists(&g, 20).unwrap();
        assert_eq!(part.partition.is_some(), naive_partition_exists(&g), "{g:?}");
        if let Some(p) = part.partition {
            assert!(check_ld_partition(&g, &p).unwrap().passed());
            assert!(gamma.gamma_ld.unwrap() <= g.n() / 2);
        }
    }
}

#[test]
fn relabelling_invariance() {
    let mut rng = GenRng::new(7);
    for i in 0..60 {
        let n = 3 + i % 8;
        let g = gnp(n, 0.5, &mut rng);
        let h = g.permute(&rng.permutation(n));
        assert_eq!(gamma_ld(&g, 18).unwrap().gamma_ld, gamma_ld(&h, 18).unwrap().gamma_ld);
        assert_eq!(
            ld_partition_exists(&g, 20).unwrap().partition.is_some(),
            ld_partition_exists(&h, 20).unwrap().partition.is_some()
        );
    }
}
