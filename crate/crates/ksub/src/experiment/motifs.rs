use ksub_core::motif::{classify_graphlet4, classify_motif_k3, Graphlet4, MotifTally};
use ksub_core::{Method, Sampler, SamplerConfig, SignedGraph, StepPlan};
use serde::Serialize;

use super::{build_sampler_with, chunk_rng, fold_chunks, load_tables, CacheLevels};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotifOptions {
    pub samples: u64,
    /// Chain lengths to try, applied at every level; empty means the bounds.
    pub schedule: Vec<u64>,
    pub jobs: usize,
    pub cache: CacheLevels,
    pub diameter: Option<usize>,
}

impl Default for MotifOptions {
    fn default() -> Self {
        MotifOptions {
            samples: 10_000,
            schedule: Vec::new(),
            jobs: 1,
            cache: CacheLevels::Auto,
            diameter: None,
        }
    }
}

/// Motif counts at one point of the step schedule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MotifRow {
    /// Fixed chain length, or `None` for the bound-derived plan.
    pub steps: Option<u64>,
    pub samples: u64,
    pub open_triplet: u64,
    pub triangle: u64,
    pub balanced_triangle: u64,
    pub line_shaped: u64,
    pub clique: u64,
    pub other: u64,
    pub path: u64,
    pub star: u64,
    pub cycle: u64,
    pub paw: u64,
    pub diamond: u64,
    pub open_ratio: f64,
    pub triangle_ratio: f64,
    pub balanced_ratio: f64,
    pub line_ratio: f64,
    pub clique_ratio: f64,
    #[serde(skip)]
    pub tally: MotifTally,
}

impl MotifRow {
    fn new(steps: Option<u64>, t: MotifTally) -> Self {
        let g = |c: Graphlet4| t.graphlets[c as usize];
        MotifRow {
            steps,
            samples: t.samples,
            open_triplet: t.open_triplet,
            triangle: t.triangle,
            balanced_triangle: t.balanced_triangle,
            line_shaped: t.line_shaped,
            clique: t.clique,
            other: t.other,
            path: g(Graphlet4::Path),
            star: g(Graphlet4::Star),
            cycle: g(Graphlet4::Cycle),
            paw: g(Graphlet4::Paw),
            diamond: g(Graphlet4::Diamond),
            open_ratio: t.ratio(t.open_triplet),
            triangle_ratio: t.ratio(t.triangle),
            balanced_ratio: t.ratio(t.balanced_triangle),
            line_ratio: t.ratio(t.line_shaped),
            clique_ratio: t.ratio(t.clique),
            tally: t,
        }
    }

    /// Class frequencies: `[open, triangle]` for k=3, graphlet shares for k=4.
    pub fn frequencies(&self) -> Vec<f64> {
        let t = &self.tally;
        if t.open_triplet + t.triangle > 0 {
            vec![t.ratio(t.open_triplet), t.ratio(t.triangle)]
        } else {
            t.graphlets.iter().map(|&c| t.ratio(c)).collect()
        }
    }
}

struct Acc<'g> {
    sampler: Sampler<'g>,
    tally: MotifTally,
}

/// Motif class frequencies of sampled k-subgraphs (k = 3 or 4) per step budget.
pub fn motif_frequency_experiment(
    sg: &SignedGraph,
    k: usize,
    method: Method,
    cfg: SamplerConfig,
    opts: &MotifOptions,
) -> Result<Vec<MotifRow>> {
    if k != 3 && k != 4 {
        return Err(Error::usage(
            "motif classes are defined for k = 3 and k = 4",
        ));
    }
    let g = sg.graph();
    let tables = load_tables(g, k, &opts.cache)?;
    let points: Vec<Option<u64>> = if opts.schedule.is_empty() {
        vec![None]
    } else {
        opts.schedule.iter().map(|&s| Some(s)).collect()
    };
    let protos = points
        .iter()
        .map(|p| {
            build_sampler_with(
                g,
                k,
                method,
                cfg,
                &tables,
                opts.diameter,
                p.map(StepPlan::fixed),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(points.len());
    for (proto, &steps) in protos.iter().zip(&points) {
        let acc = fold_chunks(
            opts.samples,
            opts.jobs,
            || Acc {
                sampler: proto.clone(),
                tally: MotifTally::default(),
            },
            |acc: &mut Acc<'_>, c| {
                let mut rng = chunk_rng(cfg.seed, 0, c.index);
                for _ in 0..c.len {
                    let s = acc.sampler.sample(&mut rng)?.state;
                    if k == 3 {
                        acc.tally.add_k3(classify_motif_k3(sg, &s)?);
                    } else {
                        acc.tally.add_graphlet4(classify_graphlet4(g, &s)?);
                    }
                }
                Ok(())
            },
            |a, b| a.tally.merge(&b.tally),
        )?;
        rows.push(MotifRow::new(steps, acc.tally));
    }
    Ok(rows)
}
