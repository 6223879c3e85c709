//! Table-only versions of the recursive samplers.
//!
//! When the state graphs of levels `2..=top` are all materialized, the
//! recursive chains can run on state indices alone: a lift is an adjacency
//! entry of level `j`, mapped once to its union state in level `j+1`. Every
//! function here consumes the generator exactly like its state-based twin in
//! `recursive.rs`, so both paths return the same samples for the same seed.

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::distributions::Distribution;
use rand::Rng;

use super::{pairs, Sampler, Variant};
use crate::enumerate::StateGraph;
use crate::graph::Graph;
use crate::state::removable_count_of;
use crate::{Error, Result};

/// Contiguous materialized levels `2..=top` plus the lift maps between them.
pub(crate) struct LevelIndex {
    top: usize,
    tables: Vec<Option<Arc<StateGraph>>>,
    /// `lift[j][e]`: index in level `j+1` of the union across adjacency entry `e` of level `j`.
    lift: Vec<Vec<u32>>,
    /// `removable[j][i]`: removable count of state `i` of level `j`.
    removable: Vec<Vec<u8>>,
}

impl LevelIndex {
    /// `None` unless levels 2 and 3 are both present.
    pub(crate) fn build(g: &Graph, tables: &[Option<Arc<StateGraph>>]) -> Option<Self> {
        let present = |j: usize| tables.get(j).is_some_and(|t| t.is_some());
        let two = tables.get(2)?.as_ref()?;
        // level-2 states are the edges in the same order, so edge draws index it directly
        if two.len() != g.edge_count() {
            return None;
        }
        let mut top = 2;
        while present(top + 1) {
            top += 1;
        }
        if top < 3 {
            return None;
        }
        let mut lift = alloc::vec![Vec::new(); top + 1];
        let mut removable = alloc::vec![Vec::new(); top + 1];
        for j in 3..=top {
            let t = tables[j].as_ref().unwrap();
            removable[j] = t
                .states()
                .iter()
                .map(|s| removable_count_of(g, s) as u8)
                .collect();
        }
        for j in 2..top {
            let lo = tables[j].as_ref().unwrap();
            let hi = tables[j + 1].as_ref().unwrap();
            let mut map = Vec::with_capacity(lo.total_degree());
            for i in 0..lo.len() {
                for &n in lo.neighbors(i) {
                    let h = lo.state(i).union(lo.state(n as usize))?;
                    map.push(hi.index_of(&h)? as u32);
                }
            }
            lift[j] = map;
        }
        Some(LevelIndex {
            top,
            tables: tables[..=top].to_vec(),
            lift,
            removable,
        })
    }

    #[inline]
    pub(crate) fn covers(&self, level: usize) -> bool {
        (2..=self.top).contains(&level)
    }

    #[inline]
    pub(crate) fn table(&self, level: usize) -> &StateGraph {
        self.tables[level].as_ref().unwrap()
    }
}

impl<'g> Sampler<'g> {
    /// Uniform neighbor of state `v` at level `j`, lifted to level `j+1`.
    #[inline]
    fn lift_idx<R: Rng + ?Sized>(
        ix: &LevelIndex,
        j: usize,
        v: usize,
        rng: &mut R,
    ) -> Option<(usize, usize)> {
        let t = ix.table(j);
        let d = t.degree(v);
        if d == 0 {
            return None;
        }
        let e = t.offset(v) + rng.gen_range(0..d);
        let h = ix.lift[j][e] as usize;
        Some((h, ix.removable[j + 1][h] as usize))
    }

    fn base_idx<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        Ok(self.base.as_ref().ok_or(Error::NoEdges)?.sample(rng))
    }

    pub(crate) fn uniform_idx<R: Rng + ?Sized>(
        &mut self,
        ix: &LevelIndex,
        j: usize,
        variant: Variant,
        rng: &mut R,
    ) -> Result<usize> {
        if j == 2 {
            return Ok(rng.gen_range(0..self.graph.edge_count()));
        }
        for _ in 0..self.cfg.rejection_cap {
            let v = match variant {
                Variant::Rss => self.degree_prop_idx(ix, j - 1, rng)?,
                Variant::RssPlus => self.degree_prop_plus_idx(ix, j - 1, rng)?,
            };
            if let Some((h, m)) = Self::lift_idx(ix, j - 1, v, rng) {
                if rng.gen::<f64>() < 1.0 / pairs(m) {
                    return Ok(h);
                }
            }
            self.counters.rejections += 1;
        }
        Err(Error::RejectionCap {
            cap: self.cfg.rejection_cap,
        })
    }

    pub(crate) fn degree_prop_idx<R: Rng + ?Sized>(
        &mut self,
        ix: &LevelIndex,
        j: usize,
        rng: &mut R,
    ) -> Result<usize> {
        if j == 2 {
            return self.base_idx(rng);
        }
        let steps = self.plan.at(j);
        let mut current = self.uniform_idx(ix, j, Variant::Rss, rng)?;
        let mut d_current = ix.table(j).degree(current) as f64;
        for _ in 0..steps {
            self.counters.steps += 1;
            if rng.gen::<f64>() < 0.5 {
                let next = self.uniform_idx(ix, j, Variant::Rss, rng)?;
                let d_next = ix.table(j).degree(next) as f64;
                self.counters.proposals += 1;
                if rng.gen::<f64>() < (d_next / d_current).min(1.0) {
                    current = next;
                    d_current = d_next;
                    self.counters.accepted += 1;
                }
            } else {
                self.counters.lazy_stays += 1;
            }
        }
        Ok(current)
    }

    pub(crate) fn degree_prop_plus_idx<R: Rng + ?Sized>(
        &mut self,
        ix: &LevelIndex,
        j: usize,
        rng: &mut R,
    ) -> Result<usize> {
        if j == 2 {
            return self.base_idx(rng);
        }
        let steps = self.plan.at(j);
        let (mut current, mut f_current) = self.lifted_proposal_idx(ix, j, rng)?;
        for _ in 0..steps {
            self.counters.steps += 1;
            if rng.gen::<f64>() < 0.5 {
                self.counters.lazy_stays += 1;
                continue;
            }
            let (next, f_next) = self.lifted_proposal_idx(ix, j, rng)?;
            self.counters.proposals += 1;
            if rng.gen::<f64>() < (f_next / f_current).min(1.0) {
                current = next;
                f_current = f_next;
                self.counters.accepted += 1;
            }
        }
        Ok(current)
    }

    fn lifted_proposal_idx<R: Rng + ?Sized>(
        &mut self,
        ix: &LevelIndex,
        j: usize,
        rng: &mut R,
    ) -> Result<(usize, f64)> {
        for _ in 0..self.cfg.rejection_cap {
            let v = self.degree_prop_plus_idx(ix, j - 1, rng)?;
            if let Some((h, m)) = Self::lift_idx(ix, j - 1, v, rng) {
                let d = ix.table(j).degree(h) as f64;
                return Ok((h, d / pairs(m)));
            }
        }
        Err(Error::RejectionCap {
            cap: self.cfg.rejection_cap,
        })
    }
}
