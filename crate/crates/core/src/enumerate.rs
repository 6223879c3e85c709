//! Materialized k-state graph, used as a validation oracle and as a lookup
//! table for small levels.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::graph::{Graph, NodeId};
use crate::state::{NeighborScratch, SubgraphState, MAX_K};
use crate::{Error, Result};

/// Default guard on the number of enumerated states.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// All connected k-subgraphs of a graph and the adjacency between them.
#[derive(Debug, Clone)]
pub struct StateGraph {
    k: usize,
    states: Vec<SubgraphState>,
    index: HashMap<SubgraphState, u32>,
    offsets: Vec<usize>,
    adj: Vec<u32>,
}

impl StateGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of states, `|V^(k)|`.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of state-graph edges, `|E^(k)|`.
    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    /// States in ascending canonical order.
    pub fn states(&self) -> &[SubgraphState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &SubgraphState {
        &self.states[i]
    }

    pub fn index_of(&self, s: &SubgraphState) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    /// Neighbor indices of state `i`, ascending (so also ascending by state).
    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adj[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Position of state `i`'s first neighbor in the flat adjacency array.
    #[inline]
    pub(crate) fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Sum of all state degrees, `2|E^(k)|`.
    pub fn total_degree(&self) -> usize {
        self.adj.len()
    }

    /// Undirected edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .map(|&j| j as usize)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Exact diameter by BFS from every state; `None` if disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::with_capacity(n);
        let mut diam = 0;
        for src in 0..n {
            dist.fill(usize::MAX);
            dist[src] = 0;
            queue.push_back(src);
            let mut seen = 0;
            while let Some(x) = queue.pop_front() {
                seen += 1;
                diam = diam.max(dist[x]);
                for &y in self.neighbors(x) {
                    let y = y as usize;
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            if seen != n {
                return None;
            }
        }
        Some(diam)
    }
}

/// Enumerates `V^(k)` and `E^(k)` with the default state cap.
pub fn enumerate_states(g: &Graph, k: usize) -> Result<StateGraph> {
    enumerate_states_capped(g, k, DEFAULT_STATE_CAP)
}

/// Enumerates `V^(k)` and `E^(k)`, failing once more than `cap` states are found.
///
/// States are generated by ESU-style expansion: each connected set is grown
/// from its smallest node, and a node only enters the extension set through
/// the first member of the current set that reaches it, so every connected
/// k-set is produced exactly once.
pub fn enumerate_states_capped(g: &Graph, k: usize, cap: usize) -> Result<StateGraph> {
    let n = g.node_count();
    if k < 1 || k >= n {
        return Err(Error::InvalidK { k, n, min: 1 });
    }
    if k > MAX_K {
        return Err(Error::KTooLarge { k, max: MAX_K });
    }
    let mut states = Vec::new();
    let mut current = Vec::with_capacity(k);
    for v in 0..n as NodeId {
        current.push(v);
        let ext: Vec<NodeId> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        extend(g, k, v, &mut current, ext, &mut states, cap)?;
        current.pop();
    }
    states.sort_unstable();

    let mut index = HashMap::with_capacity(states.len());
    for (i, s) in states.iter().enumerate() {
        index.insert(*s, i as u32);
    }
    let mut offsets = Vec::with_capacity(states.len() + 1);
    offsets.push(0);
    let mut adj = Vec::new();
    let mut scratch = NeighborScratch::new();
    for s in &states {
        for f in scratch.neighbors(g, s) {
            adj.push(index[f]);
        }
        offsets.push(adj.len());
    }
    Ok(StateGraph {
        k,
        states,
        index,
        offsets,
        adj,
    })
}

fn extend(
    g: &Graph,
    k: usize,
    root: NodeId,
    current: &mut Vec<NodeId>,
    mut ext: Vec<NodeId>,
    out: &mut Vec<SubgraphState>,
    cap: usize,
) -> Result<()> {
    if current.len() == k {
        if out.len() == cap {
            return Err(Error::EnumerationCap { cap });
        }
        let mut sorted = current.clone();
        sorted.sort_unstable();
        out.push(SubgraphState::from_sorted(&sorted));
        return Ok(());
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in g.neighbors(w) {
            // exclusive neighbors of w: larger than the root, not in the set and
            // not already adjacent to it
            if u > root
                && !current.contains(&u)
                && !current.iter().any(|&c| g.has_edge(c, u))
                && !next.contains(&u)
            {
                next.push(u);
            }
        }
        current.push(w);
        extend(g, k, root, current, next, out, cap)?;
        current.pop();
    }
    Ok(())
}
