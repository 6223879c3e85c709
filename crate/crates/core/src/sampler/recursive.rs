//! Recursive subgraph sampling: uniform sampling by lifting degree-proportional
//! (k−1)-subgraphs, and the two degree-proportional chains.

use rand::Rng;

use super::{pairs, Sampler};
use crate::state::SubgraphState;
use crate::{Error, Result};

/// Which degree-proportional chain feeds the uniform sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Rss,
    RssPlus,
}

impl<'g> Sampler<'g> {
    /// Uniform sample from `V^(k)`.
    ///
    /// For `k = 2` this is a uniform edge. Otherwise a degree-proportional
    /// (k−1)-subgraph `v` and a uniform neighbor `u` give a uniform edge of the
    /// (k−1)-state graph, and `v ∪ u` is accepted with probability `1 / C(m, 2)`.
    pub fn uniform<R: Rng + ?Sized>(
        &mut self,
        k: usize,
        variant: Variant,
        rng: &mut R,
    ) -> Result<SubgraphState> {
        if k == 2 {
            return Ok(self.uniform_edge(rng));
        }
        if let Some(ix) = self.indexed_level(k) {
            let i = self.uniform_idx(&ix, k, variant, rng)?;
            return Ok(*ix.table(k).state(i));
        }
        self.uniform_from(rng, |s, r| match variant {
            Variant::Rss => s.degree_prop(k - 1, r),
            Variant::RssPlus => s.degree_prop_plus(k - 1, r),
        })
    }

    /// The rejection loop of [`Sampler::uniform`] with the degree-proportional
    /// draw supplied by the caller.
    pub fn uniform_from<R, F>(&mut self, rng: &mut R, mut draw_prev: F) -> Result<SubgraphState>
    where
        R: Rng + ?Sized,
        F: FnMut(&mut Self, &mut R) -> Result<SubgraphState>,
    {
        for _ in 0..self.cfg.rejection_cap {
            let v = draw_prev(self, rng)?;
            if let Some((h, m)) = self.lift(&v, rng) {
                if rng.gen::<f64>() < 1.0 / pairs(m) {
                    self.check_held(&h);
                    return Ok(h);
                }
            }
            self.counters.rejections += 1;
        }
        Err(Error::RejectionCap {
            cap: self.cfg.rejection_cap,
        })
    }

    /// Sample from `V^(k)` with probability proportional to state-graph degree,
    /// via an MH chain on the complete graph whose proposals are uniform samples.
    pub fn degree_prop<R: Rng + ?Sized>(&mut self, k: usize, rng: &mut R) -> Result<SubgraphState> {
        if k == 2 {
            return self.degree_prop_edge(rng);
        }
        if let Some(ix) = self.indexed_level(k) {
            let i = self.degree_prop_idx(&ix, k, rng)?;
            return Ok(*ix.table(k).state(i));
        }
        let steps = self.plan.at(k);
        self.degree_prop_from(steps, rng, |s, r| s.uniform(k, Variant::Rss, r))
    }

    /// The chain of [`Sampler::degree_prop`] with the uniform proposal supplied by the caller.
    pub fn degree_prop_from<R, F>(
        &mut self,
        steps: u64,
        rng: &mut R,
        mut propose: F,
    ) -> Result<SubgraphState>
    where
        R: Rng + ?Sized,
        F: FnMut(&mut Self, &mut R) -> Result<SubgraphState>,
    {
        let mut current = propose(self, rng)?;
        let mut d_current = self.state_degree(&current) as f64;
        for _ in 0..steps {
            self.counters.steps += 1;
            if rng.gen::<f64>() < 0.5 {
                let next = propose(self, rng)?;
                let d_next = self.state_degree(&next) as f64;
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

    /// Sample from `V^(k)` proportionally to state-graph degree with the
    /// rejection-free chain: proposals are lifted edges of the (k−1)-state
    /// graph, weighted by `f(H) = d(H) / C(m(H), 2)`.
    pub fn degree_prop_plus<R: Rng + ?Sized>(
        &mut self,
        k: usize,
        rng: &mut R,
    ) -> Result<SubgraphState> {
        if k == 2 {
            return self.degree_prop_edge(rng);
        }
        if let Some(ix) = self.indexed_level(k) {
            let i = self.degree_prop_plus_idx(&ix, k, rng)?;
            return Ok(*ix.table(k).state(i));
        }
        let steps = self.plan.at(k);
        self.degree_prop_plus_from(steps, rng, |s, r| s.degree_prop_plus(k - 1, r))
    }

    /// The chain of [`Sampler::degree_prop_plus`] with the degree-proportional
    /// (k−1)-draw supplied by the caller.
    pub fn degree_prop_plus_from<R, F>(
        &mut self,
        steps: u64,
        rng: &mut R,
        mut draw_prev: F,
    ) -> Result<SubgraphState>
    where
        R: Rng + ?Sized,
        F: FnMut(&mut Self, &mut R) -> Result<SubgraphState>,
    {
        let (mut current, mut f_current) = self.lifted_proposal(rng, &mut draw_prev)?;
        for _ in 0..steps {
            self.counters.steps += 1;
            if rng.gen::<f64>() < 0.5 {
                self.counters.lazy_stays += 1;
                continue;
            }
            let (next, f_next) = self.lifted_proposal(rng, &mut draw_prev)?;
            self.counters.proposals += 1;
            if rng.gen::<f64>() < (f_next / f_current).min(1.0) {
                current = next;
                f_current = f_next;
                self.counters.accepted += 1;
            }
        }
        Ok(current)
    }

    /// A lifted state `H` and its weight `d(H) / C(m, 2)`. Draws without a
    /// neighbor cannot form a state-graph edge and are redrawn.
    fn lifted_proposal<R, F>(
        &mut self,
        rng: &mut R,
        draw_prev: &mut F,
    ) -> Result<(SubgraphState, f64)>
    where
        R: Rng + ?Sized,
        F: FnMut(&mut Self, &mut R) -> Result<SubgraphState>,
    {
        for _ in 0..self.cfg.rejection_cap {
            let v = draw_prev(self, rng)?;
            if let Some((h, m)) = self.lift(&v, rng) {
                self.check_held(&h);
                let d = self.state_degree(&h) as f64;
                return Ok((h, d / pairs(m)));
            }
        }
        Err(Error::RejectionCap {
            cap: self.cfg.rejection_cap,
        })
    }
}
