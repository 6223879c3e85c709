//! Built-in datasets: Zachary's karate club and a seeded Barabási–Albert generator.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use crate::graph::{Graph, NodeId};
use crate::sampler::RngState;
use crate::{Error, Result};

/// Zachary's karate club, 0-based, as in the usual distribution of the data.
pub const KARATE_EDGES: [(u8, u8); 78] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (0, 6),
    (0, 7),
    (0, 8),
    (0, 10),
    (0, 11),
    (0, 12),
    (0, 13),
    (0, 17),
    (0, 19),
    (0, 21),
    (0, 31),
    (1, 2),
    (1, 3),
    (1, 7),
    (1, 13),
    (1, 17),
    (1, 19),
    (1, 21),
    (1, 30),
    (2, 3),
    (2, 7),
    (2, 8),
    (2, 9),
    (2, 13),
    (2, 27),
    (2, 28),
    (2, 32),
    (3, 7),
    (3, 12),
    (3, 13),
    (4, 6),
    (4, 10),
    (5, 6),
    (5, 10),
    (5, 16),
    (6, 16),
    (8, 30),
    (8, 32),
    (8, 33),
    (9, 33),
    (13, 33),
    (14, 32),
    (14, 33),
    (15, 32),
    (15, 33),
    (18, 32),
    (18, 33),
    (19, 33),
    (20, 32),
    (20, 33),
    (22, 32),
    (22, 33),
    (23, 25),
    (23, 27),
    (23, 29),
    (23, 32),
    (23, 33),
    (24, 25),
    (24, 27),
    (24, 31),
    (25, 31),
    (26, 29),
    (26, 33),
    (27, 33),
    (28, 31),
    (28, 33),
    (29, 32),
    (29, 33),
    (30, 32),
    (30, 33),
    (31, 32),
    (31, 33),
    (32, 33),
];

/// FNV-1a over the endpoint bytes of [`KARATE_EDGES`].
pub const KARATE_CHECKSUM: u64 = 0x6ae9_0f24_f371_2aa2;

const fn fnv1a(edges: &[(u8, u8)]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut i = 0;
    while i < edges.len() {
        h ^= edges[i].0 as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
        h ^= edges[i].1 as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
        i += 1;
    }
    h
}

const _: () = assert!(fnv1a(&KARATE_EDGES) == KARATE_CHECKSUM);

/// The karate club graph: 34 nodes, 78 edges.
pub fn karate() -> Graph {
    Graph::from_dense_edges(
        34,
        KARATE_EDGES
            .iter()
            .map(|&(u, v)| (u as NodeId, v as NodeId)),
    )
    .expect("embedded edge list is valid")
}

/// Barabási–Albert preferential attachment.
///
/// Starts from the complete graph on `m + 1` nodes. Each later node attaches to
/// `m` distinct existing nodes, drawn one at a time proportionally to their
/// current degree with duplicates rejected.
pub fn generate_ba(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 {
        return Err(Error::InvalidGenerator("m must be at least 1"));
    }
    if n <= m {
        return Err(Error::InvalidGenerator("n must exceed m"));
    }
    if n > NodeId::MAX as usize {
        return Err(Error::InvalidGenerator("n exceeds the node id range"));
    }
    let mut rng = RngState::seed_from_u64(seed);
    let seed_nodes = m + 1;
    let edge_total = seed_nodes * m / 2 + (n - seed_nodes) * m;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(edge_total);
    // every edge contributes both endpoints, so a uniform pick is degree-proportional
    let mut ends: Vec<NodeId> = Vec::with_capacity(2 * edge_total);
    for u in 0..seed_nodes as NodeId {
        for v in u + 1..seed_nodes as NodeId {
            edges.push((u, v));
            ends.push(u);
            ends.push(v);
        }
    }
    let mut picked: Vec<NodeId> = Vec::with_capacity(m);
    for v in seed_nodes as NodeId..n as NodeId {
        picked.clear();
        while picked.len() < m {
            let t = ends[rng.gen_range(0..ends.len())];
            if !picked.contains(&t) {
                picked.push(t);
            }
        }
        for &t in &picked {
            edges.push((t, v));
            ends.push(t);
            ends.push(v);
        }
    }
    Graph::from_dense_edges(n, edges)
}
