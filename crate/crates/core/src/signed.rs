//! Directed signed edge lists and their undirected signed projection.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, NodeId};
use crate::Result;

/// One raw directed rating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedEdge {
    pub source: u64,
    pub target: u64,
    pub rating: i32,
    pub time: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// A directed signed graph together with its undirected projection.
///
/// A node pair is negative if any directed edge between them (either way) has
/// a negative rating, otherwise positive. Pairs whose ratings are all exactly
/// zero are positive and flagged. Parallel directed edges collapse after the
/// sign of every edge has been taken into account.
#[derive(Debug, Clone)]
pub struct SignedGraph {
    directed: Vec<SignedEdge>,
    graph: Graph,
    signs: Vec<Sign>,
    zero_only: Vec<bool>,
}

impl SignedGraph {
    pub fn from_directed(directed: Vec<SignedEdge>) -> Result<Self> {
        let graph = Graph::from_edges(directed.iter().map(|e| (e.source, e.target)))?;
        let mut id = hashbrown::HashMap::with_capacity(graph.node_count());
        for (i, &l) in graph.labels().iter().enumerate() {
            id.insert(l, i as NodeId);
        }
        let m = graph.edge_count();
        let mut negative = vec![false; m];
        let mut positive = vec![false; m];
        for e in &directed {
            let (a, b) = (id[&e.source], id[&e.target]);
            if a == b {
                continue;
            }
            let i = edge_index(&graph, a, b).expect("projected edge exists");
            if e.rating < 0 {
                negative[i] = true;
            } else if e.rating > 0 {
                positive[i] = true;
            }
        }
        let signs = negative
            .iter()
            .map(|&neg| if neg { Sign::Negative } else { Sign::Positive })
            .collect();
        let zero_only = (0..m).map(|i| !negative[i] && !positive[i]).collect();
        Ok(SignedGraph {
            directed,
            graph,
            signs,
            zero_only,
        })
    }

    /// An unsigned graph viewed as signed with every edge positive and no raw ratings.
    pub fn all_positive(graph: Graph) -> Self {
        let m = graph.edge_count();
        SignedGraph {
            directed: Vec::new(),
            graph,
            signs: vec![Sign::Positive; m],
            zero_only: vec![false; m],
        }
    }

    /// Raw directed edges, in input order and including self-loops.
    pub fn directed(&self) -> &[SignedEdge] {
        &self.directed
    }

    /// The undirected projection.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Sign of projected edge `i`, indexed as in [`Graph::edges`].
    pub fn edge_sign(&self, i: usize) -> Sign {
        self.signs[i]
    }

    /// Sign of the projected edge between two dense node ids, if any.
    pub fn sign(&self, u: NodeId, v: NodeId) -> Option<Sign> {
        edge_index(&self.graph, u, v).map(|i| self.signs[i])
    }

    /// Whether projected edge `i` only carries ratings of exactly zero.
    pub fn is_zero_only(&self, i: usize) -> bool {
        self.zero_only[i]
    }

    pub fn zero_only_count(&self) -> usize {
        self.zero_only.iter().filter(|&&z| z).count()
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Negative).count()
    }
}

fn edge_index(g: &Graph, u: NodeId, v: NodeId) -> Option<usize> {
    let e = if u < v { (u, v) } else { (v, u) };
    g.edges().binary_search(&e).ok()
}
