mod common;

use common::*;
use ksub_core::generators::karate;
use ksub_core::{Error, Graph};
use proptest::prelude::*;

fn floyd_warshall_diameter(g: &Graph) -> Option<usize> {
    let n = g.node_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let max = d.iter().flatten().copied().max().unwrap();
    (max < inf).then_some(max)
}

#[test]
fn small_graph_queries() {
    let p4 = path(4);
    assert_eq!(p4.degree(1).unwrap(), 2);
    assert_eq!(p4.max_degree(), 2);
    assert_eq!(p4.diameter().unwrap(), 3);
    assert!(p4.is_connected_induced(&[0, 1, 2]).unwrap());
    assert!(!p4.is_connected_induced(&[0, 2]).unwrap());
    assert!(!p4.is_connected_induced(&[0, 1, 3]).unwrap());
    assert_eq!(p4.is_connected_induced(&[]), Err(Error::EmptyNodeSet));
    assert!(p4.degree(4).is_err());

    let k4 = complete(4);
    assert!((0..4).all(|v| k4.degree(v).unwrap() == 3));
    assert_eq!(k4.diameter().unwrap(), 1);
    assert_eq!(star(3).max_degree(), 3);
}

#[test]
fn karate_facts() {
    let g = karate();
    assert_eq!((g.node_count(), g.edge_count()), (34, 78));
    assert_eq!(g.max_degree(), 17);
    assert_eq!(g.diameter().unwrap(), 5);
    assert_eq!(floyd_warshall_diameter(&g), Some(5));
}

#[test]
fn disconnected_diameter_is_an_error() {
    let g = Graph::from_dense_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert_eq!(g.diameter(), Err(Error::Disconnected));
    assert!(!g.is_connected());
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_sorted(g in connected_graph(20)) {
        for v in 0..g.node_count() as u32 {
            let nb = g.neighbors(v);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nb.contains(&v));
            for &u in nb {
                prop_assert!(g.neighbors(u).contains(&v));
            }
        }
        let total: usize = (0..g.node_count() as u32).map(|v| g.degree(v).unwrap()).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn diameter_matches_floyd_warshall(g in connected_graph(50)) {
        prop_assert_eq!(Some(g.diameter().unwrap()), floyd_warshall_diameter(&g));
    }

    #[test]
    fn induced_connectivity_matches_union_find(
        n in 2usize..=10,
        edges in prop::collection::vec((0u32..10, 0u32..10), 0..30),
    ) {
        let edges: Vec<_> = edges.into_iter().filter(|&(u, v)| (u as usize) < n && (v as usize) < n).collect();
        let g = Graph::from_dense_edges(n, edges).unwrap();
        for k in 1..=5.min(n) {
            for s in subsets(n, k) {
                prop_assert_eq!(g.is_connected_induced(&s).unwrap(), union_find_connected(&g, &s));
            }
        }
    }
}
