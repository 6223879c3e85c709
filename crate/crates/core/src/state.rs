//! Connected k-subgraph states and the neighbor relation of the k-state graph.
//!
//! Two states are adjacent when their node sets share exactly `k - 1` nodes.
//! Neighbor generation follows the candidate scheme: for every node `u` of the
//! state and every outside node `w` adjacent to the state, test whether
//! `(S \ {u}) ∪ {w}` is connected. Inside a state, adjacency is kept as `k`
//! bitmasks so the connectivity tests are a handful of word operations.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, NodeId};
use crate::{Error, Result};

/// Largest supported subgraph size.
pub const MAX_K: usize = 12;

/// A connected k-node induced subgraph, stored as its sorted node ids.
///
/// Unused slots are always zero so the derived `Eq`, `Hash` and `Ord` only
/// depend on the node set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgraphState {
    len: u8,
    nodes: [NodeId; MAX_K],
}

impl SubgraphState {
    /// Canonicalizes `nodes` (sorts them). Connectivity is not checked here,
    /// see [`SubgraphState::validate`].
    pub fn new(nodes: &[NodeId]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        if nodes.len() > MAX_K {
            return Err(Error::KTooLarge {
                k: nodes.len(),
                max: MAX_K,
            });
        }
        let mut buf = [0; MAX_K];
        buf[..nodes.len()].copy_from_slice(nodes);
        buf[..nodes.len()].sort_unstable();
        if buf[..nodes.len()].windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidState("repeated node"));
        }
        Ok(SubgraphState {
            len: nodes.len() as u8,
            nodes: buf,
        })
    }

    pub(crate) fn from_sorted(nodes: &[NodeId]) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        let mut buf = [0; MAX_K];
        buf[..nodes.len()].copy_from_slice(nodes);
        SubgraphState {
            len: nodes.len() as u8,
            nodes: buf,
        }
    }

    pub(crate) fn edge(u: NodeId, v: NodeId) -> Self {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        Self::from_sorted(&[a, b])
    }

    #[inline]
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes[..self.len as usize]
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes().contains(&v)
    }

    /// The state with the node at position `i` swapped for `w` (`w` not in the state).
    pub(crate) fn replace(&self, i: usize, w: NodeId) -> Self {
        let k = self.k();
        let mut buf = [0; MAX_K];
        let mut out = 0;
        let mut placed = false;
        for (j, &x) in self.nodes().iter().enumerate() {
            if j == i {
                continue;
            }
            if !placed && w < x {
                buf[out] = w;
                out += 1;
                placed = true;
            }
            buf[out] = x;
            out += 1;
        }
        if !placed {
            buf[out] = w;
        }
        SubgraphState {
            len: k as u8,
            nodes: buf,
        }
    }

    /// Sorted union of two states; `None` if it would exceed [`MAX_K`].
    pub fn union(&self, other: &SubgraphState) -> Option<Self> {
        let (a, b) = (self.nodes(), other.nodes());
        let mut buf = [0; MAX_K];
        let (mut i, mut j, mut out) = (0, 0, 0);
        while i < a.len() || j < b.len() {
            let x = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    y
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            if out == MAX_K {
                return None;
            }
            buf[out] = x;
            out += 1;
        }
        Some(SubgraphState {
            len: out as u8,
            nodes: buf,
        })
    }

    /// Number of nodes shared with `other`.
    pub fn overlap(&self, other: &SubgraphState) -> usize {
        let (a, b) = (self.nodes(), other.nodes());
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// Checks the ids are in range and the induced subgraph is connected.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &v in self.nodes() {
            g.check_node(v)?;
        }
        if Local::new(g, self).is_connected() {
            Ok(())
        } else {
            Err(Error::InvalidState("induced subgraph is disconnected"))
        }
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }
}

impl fmt::Debug for SubgraphState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.nodes()).finish()
    }
}

/// Adjacency of a state's induced subgraph as bitmasks over its positions.
#[derive(Clone, Copy)]
pub(crate) struct Local {
    k: usize,
    adj: [u32; MAX_K],
}

impl Local {
    pub(crate) fn new(g: &Graph, s: &SubgraphState) -> Self {
        let nodes = s.nodes();
        let k = nodes.len();
        let mut adj = [0u32; MAX_K];
        for i in 0..k {
            for j in i + 1..k {
                if g.has_edge(nodes[i], nodes[j]) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        Local { k, adj }
    }

    #[inline]
    fn full(&self) -> u32 {
        (1u32 << self.k) - 1
    }

    /// Connected component of `start` within `mask`.
    #[inline]
    fn component(&self, start: usize, mask: u32) -> u32 {
        let mut reached = 1u32 << start;
        let mut frontier = reached;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[i] & mask & !reached;
            reached |= fresh;
            frontier |= fresh;
        }
        reached
    }

    pub(crate) fn is_connected(&self) -> bool {
        self.k > 0 && self.component(0, self.full()) == self.full()
    }

    /// Components of the state with position `i` removed, as masks.
    fn components_without(&self, i: usize, out: &mut [u32; MAX_K]) -> usize {
        let mut rest = self.full() & !(1 << i);
        let mut n = 0;
        while rest != 0 {
            let c = self.component(rest.trailing_zeros() as usize, rest);
            out[n] = c;
            n += 1;
            rest &= !c;
        }
        n
    }

    /// Positions whose removal leaves the rest connected.
    pub(crate) fn removable_mask(&self) -> u32 {
        let mut mask = 0;
        for i in 0..self.k {
            let rest = self.full() & !(1 << i);
            if rest == 0 || self.component(rest.trailing_zeros() as usize, rest) == rest {
                mask |= 1 << i;
            }
        }
        mask
    }
}

/// Reusable buffers for neighbor generation. One per sampling chain.
#[derive(Default, Clone)]
pub struct NeighborScratch {
    cand: Vec<(NodeId, u32)>,
    merged: Vec<(NodeId, u32)>,
    out: Vec<SubgraphState>,
}

impl NeighborScratch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Outside nodes adjacent to the state, each with the mask of state
    /// positions it is adjacent to.
    fn collect_candidates(&mut self, g: &Graph, s: &SubgraphState) {
        self.cand.clear();
        let nodes = s.nodes();
        for (i, &v) in nodes.iter().enumerate() {
            for &w in g.neighbors(v) {
                if !nodes.contains(&w) {
                    self.cand.push((w, 1 << i));
                }
            }
        }
        self.cand.sort_unstable_by_key(|&(w, _)| w);
        self.merged.clear();
        for &(w, m) in &self.cand {
            match self.merged.last_mut() {
                Some((lw, lm)) if *lw == w => *lm |= m,
                _ => self.merged.push((w, m)),
            }
        }
    }

    /// Per removed position: how candidates must touch the remainder.
    fn removal_table(local: &Local) -> ([[u32; MAX_K]; MAX_K], [usize; MAX_K]) {
        let mut comps = [[0u32; MAX_K]; MAX_K];
        let mut ncomp = [0usize; MAX_K];
        for i in 0..local.k {
            ncomp[i] = local.components_without(i, &mut comps[i]);
        }
        (comps, ncomp)
    }

    #[inline]
    fn joins_all(mask: u32, comps: &[u32]) -> bool {
        comps.iter().all(|&c| mask & c != 0)
    }

    /// Degree of `s` in the k-state graph, without building the neighbor list.
    pub fn degree(&mut self, g: &Graph, s: &SubgraphState) -> usize {
        let k = s.k();
        if k == 1 {
            return g.node_count() - 1;
        }
        if k == 2 {
            let n = s.nodes();
            return g.deg(n[0]) + g.deg(n[1]) - 2;
        }
        let local = Local::new(g, s);
        self.collect_candidates(g, s);
        let (comps, ncomp) = Self::removal_table(&local);
        let mut total = 0;
        for &(_, mask) in &self.merged {
            for i in 0..k {
                if Self::joins_all(mask & !(1 << i), &comps[i][..ncomp[i]]) {
                    total += 1;
                }
            }
        }
        total
    }

    /// All neighbors of `s`, ascending. The returned slice lives in the scratch.
    pub fn neighbors(&mut self, g: &Graph, s: &SubgraphState) -> &[SubgraphState] {
        self.fill_neighbors(g, s);
        self.out.sort_unstable();
        &self.out
    }

    /// The `j`-th smallest neighbor of `s`, or `None` if `j >= degree`.
    pub fn nth_neighbor(
        &mut self,
        g: &Graph,
        s: &SubgraphState,
        j: usize,
    ) -> Option<SubgraphState> {
        if s.k() == 2 {
            let n = s.nodes();
            return nth_edge_neighbor(g, n[0], n[1], j);
        }
        self.fill_neighbors(g, s);
        if j >= self.out.len() {
            return None;
        }
        let (_, nth, _) = self.out.select_nth_unstable(j);
        Some(*nth)
    }

    /// Neighbor count followed by a uniformly chosen neighbor index drawn by `pick`.
    pub(crate) fn random_neighbor(
        &mut self,
        g: &Graph,
        s: &SubgraphState,
        pick: impl FnOnce(usize) -> usize,
    ) -> Option<SubgraphState> {
        if s.k() == 2 {
            let n = s.nodes();
            let d = g.deg(n[0]) + g.deg(n[1]) - 2;
            if d == 0 {
                return None;
            }
            return nth_edge_neighbor(g, n[0], n[1], pick(d));
        }
        self.fill_neighbors(g, s);
        if self.out.is_empty() {
            return None;
        }
        let j = pick(self.out.len());
        let (_, nth, _) = self.out.select_nth_unstable(j);
        Some(*nth)
    }

    fn fill_neighbors(&mut self, g: &Graph, s: &SubgraphState) {
        self.out.clear();
        let k = s.k();
        if k == 1 {
            let v = s.nodes()[0];
            self.out.extend(
                (0..g.node_count() as NodeId)
                    .filter(|&w| w != v)
                    .map(|w| SubgraphState::from_sorted(&[w])),
            );
            return;
        }
        let local = Local::new(g, s);
        self.collect_candidates(g, s);
        let (comps, ncomp) = Self::removal_table(&local);
        for &(w, mask) in &self.merged {
            for i in 0..k {
                if Self::joins_all(mask & !(1 << i), &comps[i][..ncomp[i]]) {
                    self.out.push(s.replace(i, w));
                }
            }
        }
    }
}

/// The `j`-th smallest neighbor of the edge state `{a, b}` (`a < b`) without
/// listing them. The neighbors are `{a, w}` for `w ∈ N(a) \ {b}` and `{b, w}`
/// for `w ∈ N(b) \ {a}`; each family is ascending in `w`, so the `j`-th element
/// of their merge is found by binary search on the split.
fn nth_edge_neighbor(g: &Graph, a: NodeId, b: NodeId, j: usize) -> Option<SubgraphState> {
    let (na, nb) = (g.neighbors(a), g.neighbors(b));
    let (la, lb) = (na.len() - 1, nb.len() - 1);
    if j >= la + lb {
        return None;
    }
    let skip_a = na.partition_point(|&w| w < b);
    let skip_b = nb.partition_point(|&w| w < a);
    let at_a = |i: usize| SubgraphState::edge(a, na[i + usize::from(i >= skip_a)]);
    let at_b = |i: usize| SubgraphState::edge(b, nb[i + usize::from(i >= skip_b)]);
    // smallest i (taken from the first family among the first t) with
    // i == hi or at_a(i) > at_b(t - 1 - i)
    let t = j + 1;
    let (mut lo, mut hi) = (t.saturating_sub(lb), t.min(la));
    let top = hi;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if at_a(mid) > at_b(t - 1 - mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let i = lo.min(top);
    let last_a = (i > 0).then(|| at_a(i - 1));
    let last_b = (t > i).then(|| at_b(t - 1 - i));
    last_a.max(last_b)
}

/// Number of positions whose removal leaves `s` connected, no validation.
#[inline]
pub(crate) fn removable_count_of(g: &Graph, s: &SubgraphState) -> usize {
    if s.k() <= 2 {
        return s.k();
    }
    Local::new(g, s).removable_mask().count_ones() as usize
}

/// All neighbors of `h` in the k-state graph, in ascending order.
pub fn state_neighbors(g: &Graph, h: &SubgraphState) -> Result<Vec<SubgraphState>> {
    h.validate(g)?;
    Ok(NeighborScratch::new().neighbors(g, h).to_vec())
}

/// Degree of `h` in the k-state graph.
pub fn state_degree(g: &Graph, h: &SubgraphState) -> Result<usize> {
    h.validate(g)?;
    Ok(NeighborScratch::new().degree(g, h))
}

/// Number of nodes of `h` whose removal leaves a connected `(k-1)`-subgraph.
///
/// This is also the number of connected `(k-1)`-subgraphs of `h`.
pub fn removable_count(g: &Graph, h: &SubgraphState) -> Result<usize> {
    if h.k() < 2 {
        return Err(Error::InvalidK {
            k: h.k(),
            n: g.node_count(),
            min: 2,
        });
    }
    h.validate(g)?;
    Ok(removable_count_of(g, h))
}
