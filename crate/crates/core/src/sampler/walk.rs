//! Walk-based samplers: MH on the k-state graph and the pairwise walk on the
//! (k−1)-state graph.

use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use super::{pairs, Sampler};
use crate::enumerate::StateGraph;
use crate::graph::NodeId;
use crate::state::{removable_count_of, SubgraphState};
use crate::{Error, Result};

impl<'g> Sampler<'g> {
    /// Deterministic-from-the-generator start state of `size` nodes: BFS
    /// expansion from a uniform edge, neighbors visited in ascending order.
    pub fn start_state<R: Rng + ?Sized>(&self, size: usize, rng: &mut R) -> Result<SubgraphState> {
        let edge = self.uniform_edge(rng);
        let (a, b) = (edge.nodes()[0], edge.nodes()[1]);
        let mut chosen: Vec<NodeId> = alloc::vec![a, b];
        let mut queue: VecDeque<NodeId> = [a, b].into_iter().collect();
        while chosen.len() < size {
            let Some(x) = queue.pop_front() else {
                return Err(Error::InvalidState(
                    "the start edge lies in a component with fewer than k nodes",
                ));
            };
            for &y in self.graph.neighbors(x) {
                if chosen.len() == size {
                    break;
                }
                if !chosen.contains(&y) {
                    chosen.push(y);
                    queue.push_back(y);
                }
            }
        }
        chosen.truncate(size);
        SubgraphState::new(&chosen)
    }

    /// Lazy Metropolis–Hastings walk on `G^(k)` targeting the uniform distribution.
    pub fn mcmc<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<SubgraphState> {
        self.mcmc_inner(rng, false)
    }

    /// `materialize` builds the full neighbor list of every proposal instead of
    /// only counting it; the decision sequence must not depend on it.
    pub(crate) fn mcmc_inner<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
        materialize: bool,
    ) -> Result<SubgraphState> {
        let start = self.start_state(self.k, rng)?;
        let steps = self.plan.at(self.k);
        if let Some(table) = self.table(self.k).cloned() {
            if let Some(i) = table.index_of(&start) {
                return Ok(self.mcmc_table(&table, i, steps, rng));
            }
        }
        let mut current = start;
        let mut around: Vec<SubgraphState> = self.scratch.neighbors(self.graph, &current).to_vec();
        for _ in 0..steps {
            self.counters.steps += 1;
            if rng.gen::<f64>() < 0.5 {
                if around.is_empty() {
                    continue;
                }
                let next = around[rng.gen_range(0..around.len())];
                let d_next = if materialize {
                    self.scratch.neighbors(self.graph, &next).len()
                } else {
                    self.scratch.degree(self.graph, &next)
                };
                self.counters.proposals += 1;
                let ratio = around.len() as f64 / d_next as f64;
                if rng.gen::<f64>() < ratio.min(1.0) {
                    current = next;
                    around.clear();
                    around.extend_from_slice(self.scratch.neighbors(self.graph, &current));
                    self.counters.accepted += 1;
                    self.check_held(&current);
                }
            } else {
                self.counters.lazy_stays += 1;
            }
        }
        Ok(current)
    }

    fn mcmc_table<R: Rng + ?Sized>(
        &mut self,
        table: &Arc<StateGraph>,
        mut i: usize,
        steps: u64,
        rng: &mut R,
    ) -> SubgraphState {
        let mut moves = 0;
        let mut lazy = 0;
        for _ in 0..steps {
            if rng.gen::<f64>() < 0.5 {
                let around = table.neighbors(i);
                if around.is_empty() {
                    continue;
                }
                let next = around[rng.gen_range(0..around.len())] as usize;
                moves += 1;
                let ratio = around.len() as f64 / table.degree(next) as f64;
                if rng.gen::<f64>() < ratio.min(1.0) {
                    i = next;
                    self.counters.accepted += 1;
                }
            } else {
                lazy += 1;
            }
        }
        self.counters.steps += steps;
        self.counters.proposals += moves;
        self.counters.lazy_stays += lazy;
        *table.state(i)
    }

    /// Pairwise subgraph random walk: burn in a lazy simple random walk on
    /// `G^(k-1)`, then lift the edge to the next walk position and accept with
    /// probability `1 / C(m, 2)`, advancing the walk between redraws.
    pub fn psrw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<SubgraphState> {
        let k = self.k;
        let start = self.start_state(k - 1, rng)?;
        let burn_in = self.plan.at(k);
        let redraw = self.cfg.psrw_redraw_steps;
        if let Some(table) = self.table(k - 1).cloned() {
            if let Some(i) = table.index_of(&start) {
                return self.psrw_table(&table, i, burn_in, redraw, rng);
            }
        }
        let mut current = start;
        self.lazy_walk(&mut current, burn_in, rng);
        for _ in 0..self.cfg.rejection_cap {
            if let Some((h, m)) = self.lift(&current, rng) {
                if rng.gen::<f64>() < 1.0 / pairs(m) {
                    self.check_held(&h);
                    return Ok(h);
                }
            }
            self.counters.rejections += 1;
            self.lazy_walk(&mut current, redraw, rng);
        }
        Err(Error::RejectionCap {
            cap: self.cfg.rejection_cap,
        })
    }

    fn lazy_walk<R: Rng + ?Sized>(&mut self, current: &mut SubgraphState, steps: u64, rng: &mut R) {
        for _ in 0..steps {
            self.counters.steps += 1;
            if rng.gen::<f64>() < 0.5 {
                if let Some(next) = self.random_neighbor(current, rng) {
                    *current = next;
                    self.counters.accepted += 1;
                    self.check_held(current);
                }
                self.counters.proposals += 1;
            } else {
                self.counters.lazy_stays += 1;
            }
        }
    }

    fn psrw_table<R: Rng + ?Sized>(
        &mut self,
        table: &Arc<StateGraph>,
        mut i: usize,
        burn_in: u64,
        redraw: u64,
        rng: &mut R,
    ) -> Result<SubgraphState> {
        let walk = |i: &mut usize, steps: u64, rng: &mut R, c: &mut super::Counters| {
            let mut lazy = 0;
            for _ in 0..steps {
                if rng.gen::<f64>() < 0.5 {
                    let around = table.neighbors(*i);
                    if !around.is_empty() {
                        *i = around[rng.gen_range(0..around.len())] as usize;
                        c.accepted += 1;
                    }
                } else {
                    lazy += 1;
                }
            }
            c.steps += steps;
            c.lazy_stays += lazy;
            c.proposals += steps - lazy;
        };
        walk(&mut i, burn_in, rng, &mut self.counters);
        for _ in 0..self.cfg.rejection_cap {
            let around = table.neighbors(i);
            if !around.is_empty() {
                let u = around[rng.gen_range(0..around.len())] as usize;
                let h = table
                    .state(i)
                    .union(table.state(u))
                    .ok_or(Error::InvalidState("lift exceeds the maximum k"))?;
                let m = removable_count_of(self.graph, &h);
                if rng.gen::<f64>() < 1.0 / pairs(m) {
                    self.check_held(&h);
                    return Ok(h);
                }
            }
            self.counters.rejections += 1;
            walk(&mut i, redraw, rng, &mut self.counters);
        }
        Err(Error::RejectionCap {
            cap: self.cfg.rejection_cap,
        })
    }
}
