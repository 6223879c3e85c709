//! Seeded, chunked experiment drivers.
//!
//! Every experiment splits its samples into fixed-size chunks. Chunk `c` of
//! run `r` draws from its own generator seeded with [`stream_seed`], so the
//! samples do not depend on how chunks are spread over workers. Tallies are
//! merged with commutative sums and streams are reassembled in chunk order,
//! which makes every result identical for any `--jobs` value.

mod bench;
mod motifs;
mod sweep;
mod tables;
mod uniformity;

pub use bench::{bench_sampling_time, BenchOptions, BenchRow};
pub use motifs::{motif_frequency_experiment, MotifOptions, MotifRow};
pub use sweep::{step_ratio_sweep, SweepPoint};
pub use tables::{load_tables, CacheLevels};
pub use uniformity::{
    draw_samples, uniformity_experiment, SampleRecord, SampleReport, UniformityOptions,
    UniformitySummary,
};

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use ksub_core::sampler::{rng_from_seed, RngState};

use crate::error::Result;

/// Samples per chunk.
pub const CHUNK: u64 = 1024;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of chunk `chunk` of run `run` under the user seed.
pub fn stream_seed(seed: u64, run: u64, chunk: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ run) ^ chunk)
}

pub fn chunk_rng(seed: u64, run: u64, chunk: u64) -> RngState {
    rng_from_seed(stream_seed(seed, run, chunk))
}

/// A chunk: its index and the sample range it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chunk {
    pub index: u64,
    pub start: u64,
    pub len: u64,
}

pub fn chunks(total: u64) -> impl Iterator<Item = Chunk> {
    (0..total.div_ceil(CHUNK)).map(move |index| {
        let start = index * CHUNK;
        Chunk {
            index,
            start,
            len: CHUNK.min(total - start),
        }
    })
}

/// Folds every chunk of `total` samples into a per-worker accumulator and
/// merges the accumulators. `merge` must be commutative and associative.
///
/// On failure the error of the lowest failing chunk is returned.
pub fn fold_chunks<A, I, S, M>(total: u64, jobs: usize, init: I, step: S, mut merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, Chunk) -> Result<()> + Sync,
    M: FnMut(&mut A, A),
{
    let all: Vec<Chunk> = chunks(total).collect();
    let jobs = jobs.clamp(1, all.len().max(1));
    if jobs == 1 {
        let mut acc = init();
        for c in all {
            step(&mut acc, c)?;
        }
        return Ok(acc);
    }
    let next = AtomicU64::new(0);
    let failed: Mutex<Option<(u64, crate::Error)>> = Mutex::new(None);
    let parts: Vec<A> = std::thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut acc = init();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed) as usize;
                        if i >= all.len() {
                            break;
                        }
                        if let Err(e) = step(&mut acc, all[i]) {
                            let mut f = failed.lock().unwrap();
                            if f.as_ref().map_or(true, |(j, _)| all[i].index < *j) {
                                *f = Some((all[i].index, e));
                            }
                            // later chunks may still fail earlier; let the others finish
                        }
                    }
                    acc
                })
            })
            .collect();
        workers
            .into_iter()
            .map(|w| w.join().expect("worker panicked"))
            .collect()
    });
    if let Some((_, e)) = failed.into_inner().unwrap() {
        return Err(e);
    }
    let mut it = parts.into_iter();
    let mut acc = it.next().unwrap_or_else(&init);
    for p in it {
        merge(&mut acc, p);
    }
    Ok(acc)
}

/// Maps every chunk to a value and returns the values in chunk order.
pub fn map_chunks<T, F>(total: u64, jobs: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Chunk) -> Result<T> + Sync,
{
    let mut out = fold_chunks(
        total,
        jobs,
        Vec::new,
        |acc: &mut Vec<(u64, T)>, c| {
            acc.push((c.index, f(c)?));
            Ok(())
        },
        |a, b| a.extend(b),
    )?;
    out.sort_by_key(|(i, _)| *i);
    Ok(out.into_iter().map(|(_, t)| t).collect())
}

/// Mean and sample standard deviation; the deviation is 0 for fewer than two values.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// A sampler for `(g, k, method)` with the given tables loaded.
pub fn build_sampler<'g>(
    g: &'g ksub_core::Graph,
    k: usize,
    method: ksub_core::Method,
    cfg: ksub_core::SamplerConfig,
    tables: &[std::sync::Arc<ksub_core::StateGraph>],
    diameter: Option<usize>,
) -> Result<ksub_core::Sampler<'g>> {
    build_sampler_with(g, k, method, cfg, tables, diameter, None)
}

/// Like [`build_sampler`]; an explicit plan replaces the bounds.
pub fn build_sampler_with<'g>(
    g: &'g ksub_core::Graph,
    k: usize,
    method: ksub_core::Method,
    cfg: ksub_core::SamplerConfig,
    tables: &[std::sync::Arc<ksub_core::StateGraph>],
    diameter: Option<usize>,
    plan: Option<ksub_core::StepPlan>,
) -> Result<ksub_core::Sampler<'g>> {
    let mut b = ksub_core::Sampler::builder(g, k, method).config(cfg);
    if let Some(d) = diameter {
        b = b.diameter(d);
    }
    if let Some(p) = plan {
        b = b.plan(p);
    }
    for t in tables {
        b = b.table(t.clone());
    }
    Ok(b.build()?)
}
