use std::time::{Duration, Instant};

use ksub_core::sampler::GraphStats;
use ksub_core::state::{removable_count, state_neighbors};
use ksub_core::{Graph, Method, Sampler, SamplerConfig, StepPlan};
use serde::{Deserialize, Serialize};

use super::{build_sampler_with, chunk_rng};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchOptions {
    /// Samples timed per measurement.
    pub reps: u64,
    /// Chain length of a measurement run; longer chains are extrapolated.
    pub measure_steps: u64,
    /// Degree-proportional draws per level used to estimate lift acceptance.
    pub pool: u64,
    /// Wall-clock cap of one measurement; at least one sample is always timed.
    pub time_budget: Duration,
    /// Fast samplers keep running past `reps` until this much time has passed,
    /// up to `1000 · reps` samples, so that short timings are not noise.
    pub min_time: Duration,
    pub diameter: Option<usize>,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            reps: 100,
            measure_steps: 100,
            pool: 200,
            time_budget: Duration::from_secs(2),
            min_time: Duration::from_millis(200),
            diameter: None,
        }
    }
}

/// Time per obtained sample, measured or extrapolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub method: String,
    pub k: usize,
    pub nodes: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub diameter: Option<usize>,
    pub step_ratio: f64,
    /// Expected chain steps per sample at the configured step ratio, all levels.
    pub expected_steps: f64,
    pub per_sample_ns: f64,
    /// Whether `per_sample_ns` is extrapolated from shorter chains.
    pub estimated: bool,
    pub measured_samples: u64,
    pub measured_steps: u64,
}

/// Per-sample time of `method` at level `k`.
///
/// When the expected number of chain steps per sample is at most
/// `reps · measure_steps` the sampler runs as configured. Otherwise every
/// chain is shortened, the time per step is measured, and the time per
/// sample is that cost times the expected step count. For the recursive
/// samplers the expected step count follows the recursion
///
/// * RSS: `U(j) = a_j · D(j−1)`, `D(j) = T_j + (1 + T_j/2) · U(j)`;
/// * RSS+: `P(j) = T_j + (1 + T_j/2) · P(j−1)`, `U(k) = a_k · P(k−1)`;
///
/// with `D(2) = P(2) = 0`, chain lengths `T_j`, and `a_j` the mean number of
/// lifts per accepted uniform draw, estimated from a pool of
/// degree-proportional draws.
pub fn bench_sampling_time(
    g: &Graph,
    k: usize,
    method: Method,
    cfg: SamplerConfig,
    opts: &BenchOptions,
) -> Result<BenchRow> {
    let needs_diameter = matches!(method, Method::Mcmc | Method::Psrw);
    let stats = match opts.diameter {
        Some(d) => GraphStats {
            diameter: Some(d),
            ..GraphStats::of(g, false)?
        },
        None => GraphStats::of(g, needs_diameter)?,
    };
    // validate (g, k, method) up front
    build_sampler_with(
        g,
        k,
        method,
        cfg,
        &[],
        opts.diameter,
        Some(StepPlan::fixed(0)),
    )?;

    let chain = |level: usize| -> Result<f64> {
        if cfg.step_ratio == 0.0 {
            return Ok(0.0);
        }
        let b = StepPlan::bound(method, level, &stats, cfg.epsilon)?;
        let t = (b.ln_value + cfg.step_ratio.ln()).exp().ceil();
        Ok(cfg.max_steps.map_or(t, |c| t.min(c as f64)))
    };
    let levels: Vec<usize> = match method {
        Method::Mcmc | Method::Psrw => vec![k],
        Method::Rss | Method::RssPlus => (3..=k).collect(),
    };
    let mut t = [0.0f64; ksub_core::MAX_K + 1];
    for &j in &levels {
        t[j] = chain(j)?;
    }
    let accept = match method {
        Method::Rss => (3..=k)
            .map(|j| lift_cost(g, j, cfg, opts))
            .collect::<Result<Vec<_>>>()?,
        Method::RssPlus if k >= 3 => {
            let mut a = vec![1.0; k - 2];
            a[k - 3] = lift_cost(g, k, cfg, opts)?;
            a
        }
        _ => Vec::new(),
    };
    let expected = |t: &[f64]| -> f64 {
        match method {
            Method::Mcmc | Method::Psrw => t[k],
            Method::Rss => {
                let mut d = 0.0;
                let mut u = 0.0;
                for j in 3..=k {
                    u = accept[j - 3] * d;
                    d = t[j] + (1.0 + t[j] / 2.0) * u;
                }
                u
            }
            Method::RssPlus => {
                let mut p = 0.0;
                for &tj in &t[3..k.max(3)] {
                    p = tj + (1.0 + tj / 2.0) * p;
                }
                if k >= 3 {
                    accept[k - 3] * p
                } else {
                    0.0
                }
            }
        }
    };
    let full = expected(&t);
    let budget = (opts.reps * opts.measure_steps) as f64;

    let row = |per_sample_ns: f64, estimated: bool, measured: (u64, u64)| BenchRow {
        method: method.token().to_string(),
        k,
        nodes: g.node_count(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        diameter: stats.diameter,
        step_ratio: cfg.step_ratio,
        expected_steps: full,
        per_sample_ns,
        estimated,
        measured_samples: measured.0,
        measured_steps: measured.1,
    };

    if full <= budget {
        let s = build_sampler_with(g, k, method, cfg, &[], opts.diameter, None)?;
        let (ns, samples, steps) = time_samples(s, cfg.seed, opts)?;
        return Ok(row(ns / samples as f64, false, (samples, steps)));
    }

    // shorten chains until one measurement fits the budget
    let mut cap = opts.measure_steps.max(1) as f64;
    let mut short = t;
    loop {
        for &j in &levels {
            short[j] = t[j].min(cap);
        }
        if expected(&short) <= budget || cap <= 1.0 {
            break;
        }
        cap = (cap / 2.0).floor();
    }
    let mut plan = StepPlan::fixed(0);
    for &j in &levels {
        plan.set(j, short[j] as u64);
    }
    let s = build_sampler_with(g, k, method, cfg, &[], opts.diameter, Some(plan))?;
    let (ns, samples, steps) = time_samples(s, cfg.seed, opts)?;
    let per_step = ns / steps.max(1) as f64;
    Ok(row(per_step * full, true, (samples, steps)))
}

/// Times `opts.reps` samples, or more while under `opts.min_time`; returns
/// (nanoseconds, samples, steps).
fn time_samples(mut s: Sampler<'_>, seed: u64, opts: &BenchOptions) -> Result<(f64, u64, u64)> {
    let mut rng = chunk_rng(seed, u64::MAX, 0);
    let started = Instant::now();
    let reps = opts.reps.max(1);
    let mut n = 0;
    loop {
        s.sample(&mut rng)?;
        n += 1;
        let elapsed = started.elapsed();
        if elapsed > opts.time_budget {
            break;
        }
        if n >= reps && (elapsed >= opts.min_time || n >= reps.saturating_mul(1000)) {
            break;
        }
    }
    let ns = started.elapsed().as_nanos() as f64;
    Ok((ns, n, s.counters().steps))
}

/// Mean lifts per accepted uniform draw at level `j`: the inverse of the mean
/// acceptance `E_v[ mean_{u ~ v} 1 / C(m(v ∪ u), 2) ]` over a pool of short-chain
/// degree-proportional draws `v` from level `j − 1`.
fn lift_cost(g: &Graph, j: usize, cfg: SamplerConfig, opts: &BenchOptions) -> Result<f64> {
    let mut pool = build_sampler_with(
        g,
        j,
        Method::RssPlus,
        cfg,
        &[],
        None,
        Some(StepPlan::fixed(3)),
    )?;
    let mut rng = chunk_rng(cfg.seed, u64::MAX - j as u64, 0);
    let mut total = 0.0;
    let draws = opts.pool.max(1);
    for _ in 0..draws {
        let v = pool.degree_prop_plus(j - 1, &mut rng)?;
        let nbrs = state_neighbors(g, &v)?;
        let mut p = 0.0;
        for u in &nbrs {
            let h = v.union(u).expect("neighbors share k-1 nodes");
            let m = removable_count(g, &h)?;
            p += 2.0 / (m * (m - 1)) as f64;
        }
        total += p / nbrs.len().max(1) as f64;
    }
    let mean = total / draws as f64;
    Ok(if mean > 0.0 {
        1.0 / mean
    } else {
        f64::INFINITY
    })
}
