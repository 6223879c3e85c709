#![allow(dead_code)]

use ksub_core::{Graph, NodeId, SubgraphState};
use proptest::prelude::*;

/// A connected graph: random spanning tree plus extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (4usize..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<u32>> = (1..n).map(|i| (0..i as u32).boxed()).collect();
            let extra = prop::collection::vec((0..n as u32, 0..n as u32), 0..2 * n);
            (Just(n), parents, extra)
        })
        .prop_map(|(n, parents, extra)| {
            let tree = parents
                .into_iter()
                .enumerate()
                .map(|(i, p)| (p, i as u32 + 1));
            Graph::from_dense_edges(n, tree.chain(extra)).unwrap()
        })
}

pub fn union_find_connected(g: &Graph, nodes: &[NodeId]) -> bool {
    let k = nodes.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(nodes[i], nodes[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..k).all(|i| find(&mut parent, i) == root)
}

/// Every k-subset of nodes, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<NodeId>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v as NodeId);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Connected k-subsets by brute force, ascending.
pub fn brute_states(g: &Graph, k: usize) -> Vec<SubgraphState> {
    subsets(g.node_count(), k)
        .into_iter()
        .filter(|s| union_find_connected(g, s))
        .map(|s| SubgraphState::new(&s).unwrap())
        .collect()
}

pub fn path(n: usize) -> Graph {
    Graph::from_dense_edges(n, (1..n as u32).map(|i| (i - 1, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let n32 = n as u32;
    Graph::from_dense_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v)))).unwrap()
}

/// Star with `leaves` leaves around node 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_dense_edges(leaves + 1, (1..=leaves as u32).map(|v| (0, v))).unwrap()
}

pub fn st(v: &[NodeId]) -> SubgraphState {
    SubgraphState::new(v).unwrap()
}

/// Chi-square goodness-of-fit p-value of `counts` against `probs`.
pub fn chi_square_p(counts: &[u64], probs: &[f64]) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    assert_eq!(counts.len(), probs.len());
    let total: u64 = counts.iter().sum();
    let stat: f64 = counts
        .iter()
        .zip(probs)
        .map(|(&c, &p)| {
            let e = p * total as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    let df = (counts.len() - 1) as f64;
    1.0 - ChiSquared::new(df).unwrap().cdf(stat)
}

/// Tallies samples against the oracle state list.
pub fn tally(
    states: &[SubgraphState],
    samples: impl IntoIterator<Item = SubgraphState>,
) -> Vec<u64> {
    let mut counts = vec![0u64; states.len()];
    for s in samples {
        let i = states
            .binary_search(&s)
            .expect("sample is an enumerated state");
        counts[i] += 1;
    }
    counts
}
