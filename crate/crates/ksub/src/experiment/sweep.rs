use std::time::Instant;

use ksub_core::{Graph, Method, SamplerConfig};
use serde::{Deserialize, Serialize};

use super::uniformity::{tables_and_oracle, uniformity_run};
use super::{build_sampler, mean_std, UniformityOptions};
use crate::error::Result;

/// Loss at one step ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub step_ratio: f64,
    pub runs: u64,
    pub samples: u64,
    pub loss_mean: f64,
    pub loss_std: f64,
    pub steps_per_sample: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ns: Option<u64>,
}

/// Loss versus step ratio. Every ratio reuses the same chunk streams, so
/// points differ only through the chain lengths.
pub fn step_ratio_sweep(
    g: &Graph,
    k: usize,
    method: Method,
    cfg: SamplerConfig,
    ratios: &[f64],
    opts: &UniformityOptions,
) -> Result<Vec<SweepPoint>> {
    let (tables, oracle) = tables_and_oracle(g, k, &opts.cache)?;
    let total = opts.samples.unwrap_or(1000 * oracle.len() as u64);
    // validate every ratio before the first run
    let protos = ratios
        .iter()
        .map(|&r| {
            build_sampler(
                g,
                k,
                method,
                SamplerConfig {
                    step_ratio: r,
                    ..cfg
                },
                &tables,
                opts.diameter,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(ratios.len());
    for (proto, &ratio) in protos.iter().zip(ratios) {
        let started = Instant::now();
        let reports = (0..opts.runs)
            .map(|r| uniformity_run(proto, &oracle, r, total, opts.jobs, false))
            .collect::<Result<Vec<_>>>()?;
        let losses: Vec<f64> = reports.iter().map(|r| r.loss).collect();
        let (loss_mean, loss_std) = mean_std(&losses);
        let steps: u64 = reports.iter().map(|r| r.steps).sum();
        out.push(SweepPoint {
            step_ratio: ratio,
            runs: opts.runs,
            samples: total,
            loss_mean,
            loss_std,
            steps_per_sample: steps as f64 / (total * opts.runs.max(1)) as f64,
            wall_ns: opts.wall_time.then(|| started.elapsed().as_nanos() as u64),
        });
    }
    Ok(out)
}
