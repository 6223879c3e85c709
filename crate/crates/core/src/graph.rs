//! Immutable undirected simple graph in compressed sparse row form.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::{Error, Result};

/// Dense node id, `0..n`.
pub type NodeId = u32;

/// Undirected simple graph with dense ids and sorted adjacency lists.
///
/// Construction drops self-loops and parallel edges. Once built the graph is
/// never mutated, so it can be shared freely between sampling chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph from edges over arbitrary integer ids.
    ///
    /// Ids are remapped to `0..n` in first-appearance order; the original ids
    /// stay available through [`Graph::label`].
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut remap: HashMap<u64, NodeId> = HashMap::new();
        let mut labels = Vec::new();
        let mut dense = Vec::new();
        let mut id_of = |x: u64, labels: &mut Vec<u64>| -> NodeId {
            *remap.entry(x).or_insert_with(|| {
                labels.push(x);
                (labels.len() - 1) as NodeId
            })
        };
        for (u, v) in edges {
            let a = id_of(u, &mut labels);
            let b = id_of(v, &mut labels);
            dense.push((a, b));
        }
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(Self::build(labels, dense))
    }

    /// Builds a graph on nodes `0..n` from dense edges. Nodes without edges are kept.
    pub fn from_dense_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut dense = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::NodeOutOfRange { node: x as u64, n });
                }
            }
            dense.push((u, v));
        }
        Ok(Self::build((0..n as u64).collect(), dense))
    }

    fn build(labels: Vec<u64>, raw: Vec<(NodeId, NodeId)>) -> Self {
        let n = labels.len();
        let mut seen: HashSet<(NodeId, NodeId)> = HashSet::with_capacity(raw.len());
        let mut edges = Vec::with_capacity(raw.len());
        for (u, v) in raw {
            if u == v {
                continue;
            }
            let e = if u < v { (u, v) } else { (v, u) };
            if seen.insert(e) {
                edges.push(e);
            }
        }
        edges.sort_unstable();

        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in &edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets,
            targets,
            edges,
            labels,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Original id of a dense node.
    pub fn label(&self, v: NodeId) -> u64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Sorted neighbors of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub(crate) fn deg(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.deg(v))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count() as NodeId)
            .map(|v| self.deg(v))
            .max()
            .unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        // search the shorter list
        let (a, b) = if self.deg(u) <= self.deg(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v as u64,
                n: self.node_count(),
            })
        }
    }

    /// BFS distances from `src`; unreachable nodes get `usize::MAX`.
    pub fn bfs_distances(&self, src: NodeId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        self.bfs_into(src, &mut dist, &mut queue);
        dist
    }

    fn bfs_into(&self, src: NodeId, dist: &mut [usize], queue: &mut VecDeque<NodeId>) -> usize {
        dist.fill(usize::MAX);
        queue.clear();
        dist[src as usize] = 0;
        queue.push_back(src);
        let mut reached = 0;
        let mut ecc = 0;
        while let Some(x) = queue.pop_front() {
            reached += 1;
            let dx = dist[x as usize];
            ecc = ecc.max(dx);
            for &y in self.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
        if reached == self.node_count() {
            ecc
        } else {
            usize::MAX
        }
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Exact diameter, one BFS per node.
    pub fn diameter(&self) -> Result<usize> {
        let n = self.node_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut dist = vec![0; n];
        let mut queue = VecDeque::with_capacity(n);
        let mut diam = 0;
        for v in 0..n as NodeId {
            let ecc = self.bfs_into(v, &mut dist, &mut queue);
            if ecc == usize::MAX {
                return Err(Error::Disconnected);
            }
            diam = diam.max(ecc);
        }
        Ok(diam)
    }

    /// Whether the subgraph induced by `nodes` is connected. `O(k^2)` edge probes.
    pub fn is_connected_induced(&self, nodes: &[NodeId]) -> Result<bool> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        for &v in nodes {
            self.check_node(v)?;
        }
        let k = nodes.len();
        let mut reached = vec![false; k];
        let mut stack = vec![0usize];
        reached[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if !reached[j] && self.has_edge(nodes[i], nodes[j]) {
                    reached[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        Ok(count == k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> Graph {
        Graph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_dense_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn remaps_in_first_appearance_order() {
        let g = Graph::from_edges([(5, 9), (9, 5), (5, 5)]).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.label(0), 5);
        assert_eq!(g.label(1), 9);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(Graph::from_edges([]), Err(Error::EmptyGraph));
    }

    #[test]
    fn degrees() {
        let p = path4();
        assert_eq!(p.degree(1).unwrap(), 2);
        assert_eq!(p.max_degree(), 2);
        assert!(matches!(p.degree(4), Err(Error::NodeOutOfRange { .. })));
        let k = k4();
        assert!((0..4).all(|v| k.degree(v).unwrap() == 3));
        let star = Graph::from_dense_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.max_degree(), 3);
    }

    #[test]
    fn diameters() {
        assert_eq!(path4().diameter().unwrap(), 3);
        assert_eq!(k4().diameter().unwrap(), 1);
        let split = Graph::from_dense_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.diameter(), Err(Error::Disconnected));
    }

    #[test]
    fn induced_connectivity() {
        let p = path4();
        assert!(p.is_connected_induced(&[0, 1, 2]).unwrap());
        assert!(!p.is_connected_induced(&[0, 2]).unwrap());
        assert!(!p.is_connected_induced(&[0, 1, 3]).unwrap());
        assert_eq!(p.is_connected_induced(&[]), Err(Error::EmptyNodeSet));
    }
}
