use std::sync::Arc;
use std::time::Instant;

use ksub_core::loss::loss;
use ksub_core::{enumerate_states, Graph, Method, Sampler, SamplerConfig, StateGraph};
use serde::{Deserialize, Serialize};

use super::{
    build_sampler, chunk_rng, fold_chunks, load_tables, map_chunks, mean_std, CacheLevels,
};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformityOptions {
    pub runs: u64,
    /// Samples per run; `1000 · |V^(k)|` when `None`.
    pub samples: Option<u64>,
    pub jobs: usize,
    pub cache: CacheLevels,
    pub diameter: Option<usize>,
    pub wall_time: bool,
}

impl Default for UniformityOptions {
    fn default() -> Self {
        UniformityOptions {
            runs: 10,
            samples: None,
            jobs: 1,
            cache: CacheLevels::Auto,
            diameter: None,
            wall_time: true,
        }
    }
}

/// Tally of one run against the enumerated state list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub run: u64,
    pub seed: u64,
    pub step_ratio: f64,
    pub total: u64,
    pub num_states: usize,
    pub loss: f64,
    pub steps: u64,
    pub rejections: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ns: Option<u64>,
    /// Count per state, in enumeration order.
    pub counts: Vec<u64>,
}

impl SampleReport {
    pub fn recompute_loss(&self) -> Result<f64> {
        Ok(loss(
            self.counts.iter().copied(),
            self.total,
            self.num_states,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformitySummary {
    pub k: usize,
    pub method: String,
    pub num_states: usize,
    pub mean_loss: f64,
    pub std_loss: f64,
    pub reports: Vec<SampleReport>,
}

/// One drawn sample as emitted by `ksub sample`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: u64,
    pub nodes: Vec<u64>,
    pub steps: u64,
    pub rejections: u64,
}

struct Tally<'g> {
    sampler: Sampler<'g>,
    counts: Vec<u64>,
}

/// Draws `total` samples for run `run` and tallies them against `oracle`.
pub fn uniformity_run(
    proto: &Sampler<'_>,
    oracle: &StateGraph,
    run: u64,
    total: u64,
    jobs: usize,
    wall_time: bool,
) -> Result<SampleReport> {
    let seed = proto.config().seed;
    let started = Instant::now();
    let init = || {
        let mut sampler = proto.clone();
        sampler.reset_counters();
        Tally {
            sampler,
            counts: vec![0; oracle.len()],
        }
    };
    let step = |acc: &mut Tally<'_>, c: super::Chunk| {
        let mut rng = chunk_rng(seed, run, c.index);
        for _ in 0..c.len {
            let s = acc.sampler.sample(&mut rng)?;
            let i = oracle
                .index_of(&s.state)
                .ok_or(ksub_core::Error::InvalidState(
                    "sample outside the enumerated states",
                ))?;
            acc.counts[i] += 1;
        }
        Ok(())
    };
    let mut steps = 0;
    let mut rejections = 0;
    let tally = fold_chunks(total, jobs, init, step, |a, b| {
        for (x, y) in a.counts.iter_mut().zip(&b.counts) {
            *x += y;
        }
        steps += b.sampler.counters().steps;
        rejections += b.sampler.counters().rejections;
    })?;
    steps += tally.sampler.counters().steps;
    rejections += tally.sampler.counters().rejections;
    let wall_ns = wall_time.then(|| started.elapsed().as_nanos() as u64);
    Ok(SampleReport {
        run,
        seed,
        step_ratio: proto.config().step_ratio,
        total,
        num_states: oracle.len(),
        loss: loss(tally.counts.iter().copied(), total, oracle.len())?,
        steps,
        rejections,
        wall_ns,
        counts: tally.counts,
    })
}

/// Tables per the cache policy plus the level-`k` oracle (shared when cached).
pub(crate) fn tables_and_oracle(
    g: &Graph,
    k: usize,
    cache: &CacheLevels,
) -> Result<(Vec<Arc<StateGraph>>, Arc<StateGraph>)> {
    let tables = load_tables(g, k, cache)?;
    let oracle = match tables.iter().find(|t| t.k() == k) {
        Some(t) => t.clone(),
        None => Arc::new(enumerate_states(g, k)?),
    };
    Ok((tables, oracle))
}

/// Repeats [`uniformity_run`] `opts.runs` times; run `r` uses chunk streams `(seed, r, ·)`.
pub fn uniformity_experiment(
    g: &Graph,
    k: usize,
    method: Method,
    cfg: SamplerConfig,
    opts: &UniformityOptions,
) -> Result<UniformitySummary> {
    let (tables, oracle) = tables_and_oracle(g, k, &opts.cache)?;
    let proto = build_sampler(g, k, method, cfg, &tables, opts.diameter)?;
    let total = opts.samples.unwrap_or(1000 * oracle.len() as u64);
    let reports = (0..opts.runs)
        .map(|r| uniformity_run(&proto, &oracle, r, total, opts.jobs, opts.wall_time))
        .collect::<Result<Vec<_>>>()?;
    let losses: Vec<f64> = reports.iter().map(|r| r.loss).collect();
    let (mean_loss, std_loss) = mean_std(&losses);
    Ok(UniformitySummary {
        k,
        method: method.token().to_string(),
        num_states: oracle.len(),
        mean_loss,
        std_loss,
        reports,
    })
}

/// `total` sample records of run 0, in order.
pub fn draw_samples(proto: &Sampler<'_>, total: u64, jobs: usize) -> Result<Vec<SampleRecord>> {
    let g = proto.graph();
    let seed = proto.config().seed;
    let parts = map_chunks(total, jobs, |c| {
        let mut s = proto.clone();
        let mut rng = chunk_rng(seed, 0, c.index);
        (0..c.len)
            .map(|i| {
                let x = s.sample(&mut rng)?;
                Ok(SampleRecord {
                    index: c.start + i,
                    nodes: x.state.nodes().iter().map(|&v| g.label(v)).collect(),
                    steps: x.steps,
                    rejections: x.rejections,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(parts.into_iter().flatten().collect())
}
