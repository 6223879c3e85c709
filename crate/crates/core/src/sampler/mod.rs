//! The four k-subgraph samplers.
//!
//! * [`Method::Mcmc`]: lazy Metropolis–Hastings walk on the k-state graph.
//! * [`Method::Psrw`]: lazy simple random walk on the (k−1)-state graph, whose
//!   edges are lifted to k-subgraphs with a multiplicity-correcting rejection.
//! * [`Method::Rss`]: recursive sampling; a uniform k-subgraph is built from a
//!   degree-proportional (k−1)-subgraph, and degree-proportional samples come
//!   from an MH chain whose proposals are uniform samples.
//! * [`Method::RssPlus`]: like RSS but the degree-proportional chain proposes
//!   lifted state-graph edges directly, so only the top level rejects.
//!
//! A [`Sampler`] owns its scratch buffers and counters; build one per chain and
//! share the [`Graph`] by reference.

mod indexed;
mod recursive;
mod walk;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use libm::{ceil, exp, log};
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand::SeedableRng;

use self::indexed::LevelIndex;
use crate::bounds::{self, Bound, BoundInputs};
use crate::enumerate::StateGraph;
use crate::graph::Graph;
use crate::state::{removable_count_of, NeighborScratch, SubgraphState, MAX_K};
use crate::{Error, Result};

pub use recursive::Variant;

/// Seedable generator used by the CLI and experiments.
pub type RngState = rand_xoshiro::Xoshiro256PlusPlus;

pub fn rng_from_seed(seed: u64) -> RngState {
    RngState::seed_from_u64(seed)
}

/// Step counts above this are refused unless capped explicitly.
pub const MAX_STEPS: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Mcmc,
    Psrw,
    Rss,
    RssPlus,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Mcmc, Method::Psrw, Method::Rss, Method::RssPlus];

    pub fn token(&self) -> &'static str {
        match self {
            Method::Mcmc => "mcmc",
            Method::Psrw => "psrw",
            Method::Rss => "rss",
            Method::RssPlus => "rss+",
        }
    }

    /// Smallest k the method is defined for.
    pub fn min_k(&self) -> usize {
        match self {
            Method::Psrw => 3,
            _ => 2,
        }
    }

    fn needs_diameter(&self) -> bool {
        matches!(self, Method::Mcmc | Method::Psrw)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mcmc" => Ok(Method::Mcmc),
            "psrw" => Ok(Method::Psrw),
            "rss" => Ok(Method::Rss),
            "rss+" | "rss_plus" | "rssplus" => Ok(Method::RssPlus),
            _ => Err(Error::InvalidConfig(
                "unknown method; expected mcmc, psrw, rss or rss+",
            )),
        }
    }
}

/// Knobs the algorithms leave to the experimenter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    /// Target total-variation error of every chain.
    pub epsilon: f64,
    pub seed: u64,
    /// Multiplier applied to every theoretical step count, in `[0, 1]`.
    pub step_ratio: f64,
    /// Maximum iterations of any rejection loop.
    pub rejection_cap: u64,
    /// Chain steps between pairwise-walk redraws after a rejection.
    pub psrw_redraw_steps: u64,
    /// Hard cap on any single chain length, applied after scaling.
    pub max_steps: Option<u64>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            epsilon: 0.05,
            seed: 0,
            step_ratio: 1.0,
            rejection_cap: 1_000_000,
            psrw_redraw_steps: 1,
            max_steps: None,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig("epsilon must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.step_ratio) {
            return Err(Error::InvalidConfig("step ratio must lie in [0, 1]"));
        }
        if self.rejection_cap == 0 {
            return Err(Error::InvalidConfig("rejection cap must be positive"));
        }
        if self.psrw_redraw_steps == 0 {
            return Err(Error::InvalidConfig("redraw steps must be positive"));
        }
        if self.max_steps == Some(0) && self.step_ratio > 0.0 {
            // a zero cap with a positive ratio is almost certainly a typo
            return Err(Error::InvalidConfig("step cap must be positive"));
        }
        Ok(())
    }
}

/// Host-graph quantities the bounds depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub max_degree: usize,
    /// Exact diameter or a user-supplied upper bound; `None` when not needed.
    pub diameter: Option<usize>,
}

impl GraphStats {
    pub fn of(g: &Graph, need_diameter: bool) -> Result<Self> {
        Ok(GraphStats {
            n: g.node_count(),
            max_degree: g.max_degree(),
            diameter: if need_diameter {
                Some(g.diameter()?)
            } else {
                None
            },
        })
    }

    fn inputs(&self, k: usize, epsilon: f64) -> BoundInputs {
        BoundInputs {
            k,
            delta: self.max_degree.max(1),
            diam: self.diameter.unwrap_or(1).max(1),
            n: self.n,
            epsilon,
        }
    }
}

/// Chain lengths per level.
///
/// For MCMC and PSRW only level `k` is used (the PSRW burn-in on the
/// (k−1)-state graph is stored at level `k`). For RSS and RSS+ level `j`
/// holds the length of the degree-proportional chain on `V^(j)`, `3 <= j <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepPlan {
    steps: [u64; MAX_K + 1],
}

impl StepPlan {
    /// The same chain length at every level.
    pub fn fixed(steps: u64) -> Self {
        StepPlan {
            steps: [steps; MAX_K + 1],
        }
    }

    #[inline]
    pub fn at(&self, level: usize) -> u64 {
        self.steps[level]
    }

    pub fn set(&mut self, level: usize, steps: u64) {
        self.steps[level] = steps;
    }

    /// Theoretical bound for `method` at `level`.
    pub fn bound(method: Method, level: usize, stats: &GraphStats, epsilon: f64) -> Result<Bound> {
        let b = stats.inputs(level, epsilon);
        match method {
            Method::Mcmc => bounds::bound_mcmc(&b),
            Method::Psrw => bounds::bound_psrw(&b),
            Method::Rss => bounds::bound_degree_prop(&b),
            Method::RssPlus => bounds::bound_rss_plus(&b),
        }
    }

    /// `⌈step_ratio · bound⌉` for every level the method uses, capped by `max_steps`.
    pub fn from_bounds(
        method: Method,
        k: usize,
        stats: &GraphStats,
        cfg: &SamplerConfig,
    ) -> Result<Self> {
        let mut plan = StepPlan::fixed(0);
        let levels = match method {
            Method::Mcmc | Method::Psrw => k..=k,
            Method::Rss | Method::RssPlus => 3..=k,
        };
        for level in levels {
            let bound = Self::bound(method, level, stats, cfg.epsilon)?;
            plan.steps[level] = scale_steps(&bound, cfg.step_ratio, cfg.max_steps, level)?;
        }
        Ok(plan)
    }
}

fn scale_steps(bound: &Bound, ratio: f64, cap: Option<u64>, level: usize) -> Result<u64> {
    if ratio == 0.0 {
        return Ok(0);
    }
    let ln_steps = bound.ln_value + log(ratio);
    let steps = if ln_steps >= 62.0 * core::f64::consts::LN_2 {
        match cap {
            Some(c) => return Ok(c),
            None => {
                return Err(Error::StepOverflow {
                    level,
                    log_steps: ln_steps,
                })
            }
        }
    } else {
        ceil(exp(ln_steps)) as u64
    };
    Ok(match cap {
        Some(c) => steps.min(c),
        None => steps,
    })
}

/// Work done while drawing one sample.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// Chain iterations at every level, lazy ones included.
    pub steps: u64,
    /// Rejected lifts in the uniform and pairwise-walk rejection loops.
    pub rejections: u64,
    /// Chain iterations that stayed put on the lazy coin.
    pub lazy_stays: u64,
    pub proposals: u64,
    pub accepted: u64,
}

/// One drawn state plus the work it took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sample {
    pub state: SubgraphState,
    pub steps: u64,
    pub rejections: u64,
}

/// A configured sampler for one `(graph, k, method)`.
///
/// Clones share the loaded tables and start from the same counters.
#[derive(Clone)]
pub struct Sampler<'g> {
    graph: &'g Graph,
    k: usize,
    method: Method,
    cfg: SamplerConfig,
    plan: StepPlan,
    base: Option<WeightedIndex<u64>>,
    tables: Vec<Option<Arc<StateGraph>>>,
    index: Option<Arc<LevelIndex>>,
    scratch: NeighborScratch,
    counters: Counters,
}

/// Builder for [`Sampler`].
pub struct SamplerBuilder<'g> {
    graph: &'g Graph,
    k: usize,
    method: Method,
    cfg: SamplerConfig,
    diameter: Option<usize>,
    plan: Option<StepPlan>,
    tables: Vec<Arc<StateGraph>>,
}

impl<'g> SamplerBuilder<'g> {
    pub fn config(mut self, cfg: SamplerConfig) -> Self {
        self.cfg = cfg;
        self
    }

    /// Upper bound on the host diameter to use instead of computing it.
    pub fn diameter(mut self, d: usize) -> Self {
        self.diameter = Some(d);
        self
    }

    /// Explicit chain lengths, bypassing the bounds.
    pub fn plan(mut self, plan: StepPlan) -> Self {
        self.plan = Some(plan);
        self
    }

    /// A materialized state graph used for degree and neighbor lookups at its level.
    pub fn table(mut self, table: Arc<StateGraph>) -> Self {
        self.tables.push(table);
        self
    }

    pub fn build(self) -> Result<Sampler<'g>> {
        self.cfg.validate()?;
        let n = self.graph.node_count();
        let k = self.k;
        if k > MAX_K {
            return Err(Error::KTooLarge { k, max: MAX_K });
        }
        if k < self.method.min_k() || k >= n {
            return Err(Error::InvalidK {
                k,
                n,
                min: self.method.min_k(),
            });
        }
        if self.graph.edge_count() == 0 {
            return Err(Error::NoEdges);
        }
        let plan = match self.plan {
            Some(p) => p,
            None => {
                let stats = match self.diameter {
                    Some(d) => GraphStats {
                        diameter: Some(d),
                        ..GraphStats::of(self.graph, false)?
                    },
                    None => GraphStats::of(self.graph, self.method.needs_diameter())?,
                };
                StepPlan::from_bounds(self.method, k, &stats, &self.cfg)?
            }
        };
        let weights = self
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| (self.graph.deg(u) + self.graph.deg(v) - 2) as u64);
        let base = WeightedIndex::new(weights).ok();
        let mut tables = alloc::vec![None; MAX_K + 1];
        for t in self.tables {
            let level = t.k();
            tables[level] = Some(t);
        }
        let index = LevelIndex::build(self.graph, &tables).map(Arc::new);
        Ok(Sampler {
            graph: self.graph,
            k,
            method: self.method,
            cfg: self.cfg,
            plan,
            base,
            tables,
            index,
            scratch: NeighborScratch::new(),
            counters: Counters::default(),
        })
    }
}

impl<'g> Sampler<'g> {
    pub fn builder(graph: &'g Graph, k: usize, method: Method) -> SamplerBuilder<'g> {
        SamplerBuilder {
            graph,
            k,
            method,
            cfg: SamplerConfig::default(),
            diameter: None,
            plan: None,
            tables: Vec::new(),
        }
    }

    /// Sampler with chain lengths taken from the bounds.
    pub fn new(graph: &'g Graph, k: usize, method: Method, cfg: SamplerConfig) -> Result<Self> {
        Self::builder(graph, k, method).config(cfg).build()
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.cfg
    }

    pub fn plan(&self) -> &StepPlan {
        &self.plan
    }

    pub fn set_plan(&mut self, plan: StepPlan) {
        self.plan = plan;
    }

    /// Counters accumulated since the last [`Sampler::reset_counters`].
    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    pub fn reset_counters(&mut self) {
        self.counters = Counters::default();
    }

    /// Draws one k-subgraph, uniformly at random once every chain has mixed.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Sample> {
        let before = self.counters;
        let state = match self.method {
            Method::Mcmc => self.mcmc(rng)?,
            Method::Psrw => self.psrw(rng)?,
            Method::Rss => self.uniform(self.k, Variant::Rss, rng)?,
            Method::RssPlus => self.uniform(self.k, Variant::RssPlus, rng)?,
        };
        Ok(Sample {
            state,
            steps: self.counters.steps - before.steps,
            rejections: self.counters.rejections - before.rejections,
        })
    }

    /// The level index, if it covers `level`.
    fn indexed_level(&self, level: usize) -> Option<Arc<LevelIndex>> {
        self.index.as_ref().filter(|ix| ix.covers(level)).cloned()
    }

    fn table(&self, level: usize) -> Option<&Arc<StateGraph>> {
        self.tables.get(level).and_then(|t| t.as_ref())
    }

    /// Degree of `s` in its state graph, from the table when one is loaded.
    pub fn state_degree(&mut self, s: &SubgraphState) -> usize {
        if let Some(t) = self.table(s.k()) {
            if let Some(i) = t.index_of(s) {
                return t.degree(i);
            }
        }
        self.scratch.degree(self.graph, s)
    }

    /// Uniform neighbor of `s` in its state graph; `None` if it has none.
    ///
    /// Both the table and the on-demand path index the ascending neighbor list
    /// with a single `gen_range`, so they consume the generator identically.
    pub fn random_neighbor<R: Rng + ?Sized>(
        &mut self,
        s: &SubgraphState,
        rng: &mut R,
    ) -> Option<SubgraphState> {
        if let Some(t) = self.table(s.k()) {
            if let Some(i) = t.index_of(s) {
                let nbrs = t.neighbors(i);
                if nbrs.is_empty() {
                    return None;
                }
                let j = nbrs[rng.gen_range(0..nbrs.len())];
                return Some(*t.state(j as usize));
            }
        }
        self.scratch
            .random_neighbor(self.graph, s, |d| rng.gen_range(0..d))
    }

    /// Draws a uniform neighbor `u` of `v` and returns `v ∪ u` with its
    /// removable count.
    pub fn lift<R: Rng + ?Sized>(
        &mut self,
        v: &SubgraphState,
        rng: &mut R,
    ) -> Option<(SubgraphState, usize)> {
        let u = self.random_neighbor(v, rng)?;
        let h = v.union(&u)?;
        debug_assert_eq!(h.k(), v.k() + 1);
        let m = removable_count_of(self.graph, &h);
        Some((h, m))
    }

    pub(crate) fn uniform_edge<R: Rng + ?Sized>(&self, rng: &mut R) -> SubgraphState {
        let edges = self.graph.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        SubgraphState::edge(u, v)
    }

    /// Edge drawn with probability proportional to its 2-state degree `d(u) + d(v) − 2`.
    pub(crate) fn degree_prop_edge<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SubgraphState> {
        let base = self.base.as_ref().ok_or(Error::NoEdges)?;
        let (u, v) = self.graph.edges()[base.sample(rng)];
        Ok(SubgraphState::edge(u, v))
    }

    #[inline]
    pub(crate) fn check_held(&self, s: &SubgraphState) {
        debug_assert!(s.is_valid(self.graph), "chain holds invalid state {s:?}");
    }
}

/// `m choose 2` as a float.
#[inline]
pub(crate) fn pairs(m: usize) -> f64 {
    (m * (m.saturating_sub(1)) / 2) as f64
}

fn one_shot<'g>(
    g: &'g Graph,
    k: usize,
    method: Method,
    cfg: &SamplerConfig,
) -> Result<Sampler<'g>> {
    Sampler::new(g, k, method, *cfg)
}

/// One lazy Metropolis–Hastings sample on the k-state graph.
pub fn mcmc_sampling<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SubgraphState> {
    one_shot(g, k, Method::Mcmc, cfg)?.mcmc(rng)
}

/// One uniform k-subgraph by recursive sampling.
pub fn uniform_sampling<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
    variant: Variant,
) -> Result<SubgraphState> {
    let method = match variant {
        Variant::Rss => Method::Rss,
        Variant::RssPlus => Method::RssPlus,
    };
    one_shot(g, k, method, cfg)?.uniform(k, variant, rng)
}

/// One k-subgraph drawn proportionally to its state-graph degree (RSS chain).
pub fn degree_prop_sampling<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SubgraphState> {
    one_shot(g, k, Method::Rss, cfg)?.degree_prop(k, rng)
}

/// One k-subgraph drawn proportionally to its state-graph degree (RSS+ chain).
pub fn degree_prop_sampling_plus<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SubgraphState> {
    one_shot(g, k, Method::RssPlus, cfg)?.degree_prop_plus(k, rng)
}

/// One pairwise-walk sample.
pub fn psrw_sampling<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SubgraphState> {
    one_shot(g, k, Method::Psrw, cfg)?.psrw(rng)
}
