//! Command-line front end. Flags become a [`RunManifest`]; [`execute`] runs a
//! manifest, so a file header alone is enough to reproduce the file.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand as ClapSubcommand};
use ksub_core::bounds::{bound_degree_prop, bound_mcmc, bound_psrw, bound_rss_plus};
use ksub_core::enumerate::{enumerate_states_capped, DEFAULT_STATE_CAP};
use ksub_core::sampler::GraphStats;
use ksub_core::{BoundInputs, Method, MAX_K};
use serde::Serialize;

use crate::dataset::{Dataset, DatasetSpec};
use crate::error::{Error, Result};
use crate::experiment::{
    bench_sampling_time, build_sampler, draw_samples, load_tables, motif_frequency_experiment,
    step_ratio_sweep, uniformity_experiment, BenchOptions, CacheLevels, MotifOptions, SampleRecord,
    UniformityOptions,
};
use crate::io::StateGraphJson;
use crate::report::{
    is_timing_column, read_manifest, write_json, write_rows, Format, RunManifest, Subcommand,
    CSV_PREFIX,
};

#[derive(Debug, Parser)]
#[command(
    name = "ksub",
    version,
    about = "Sample connected k-node subgraphs and run the evaluation experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, ClapSubcommand)]
pub enum Command {
    /// Draw samples and print them as JSON lines.
    Sample(SampleArgs),
    /// Materialize the k-state graph and print its size and diameter.
    Enumerate(EnumerateArgs),
    /// Loss of the sample distribution against the enumerated states.
    Uniformity(UniformityArgs),
    /// Loss versus step ratio.
    Sweep(SweepArgs),
    /// Time per sample, measured or extrapolated.
    Bench(BenchArgs),
    /// Motif class frequencies of sampled 3- or 4-node subgraphs.
    Motifs(MotifArgs),
    /// Evaluate the four mixing-time bounds.
    Bounds(BoundsArgs),
    /// Re-run the manifest stored at the top of an output file.
    Rerun(RerunArgs),
}

#[derive(Debug, Args)]
pub struct SamplerArgs {
    /// Dataset: karate, ba:N:M[:SEED], file:PATH or signed:PATH.
    #[arg(long)]
    pub graph: String,
    /// Subgraph size.
    #[arg(long)]
    pub k: usize,
    /// mcmc, psrw, rss or rss+.
    #[arg(long, default_value = "rss+")]
    pub method: String,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fraction of every theoretical chain length to run, in [0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub step_ratio: f64,
    /// Upper bound on the host diameter, used instead of computing it.
    #[arg(long)]
    pub diameter: Option<usize>,
    /// Cap on any single chain length.
    #[arg(long)]
    pub max_steps: Option<u64>,
    #[arg(long, default_value_t = 1_000_000)]
    pub rejection_cap: u64,
    #[arg(long, default_value_t = 1)]
    pub psrw_redraw_steps: u64,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// State graphs to materialize: auto, none or a list such as 2,3,4.
    #[arg(long, default_value = "auto")]
    pub cache_levels: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv, json or jsonl.
    #[arg(long)]
    pub format: Option<String>,
    /// Leave wall-clock columns out of the report.
    #[arg(long)]
    pub no_wall_time: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Number of samples.
    #[arg(long, default_value_t = 1)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub k: usize,
    /// Refuse state spaces larger than this.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub max_states: usize,
    /// Where to write the state graph JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UniformityArgs {
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value_t = 10)]
    pub runs: u64,
    /// Samples per run; 1000 times the number of states when absent.
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Comma-separated step ratios.
    #[arg(long, default_value = "0,0.001,0.01,0.1,1")]
    pub ratios: String,
    #[arg(long, default_value_t = 1)]
    pub runs: u64,
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Dataset: karate, ba:N:M[:SEED], file:PATH or signed:PATH.
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub k: usize,
    /// mcmc, psrw, rss, rss+ or all.
    #[arg(long, default_value = "all")]
    pub method: String,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub step_ratio: f64,
    #[arg(long)]
    pub diameter: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub reps: u64,
    /// Chain length of a timing run; longer chains are extrapolated.
    #[arg(long, default_value_t = 100)]
    pub measure_steps: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Args)]
pub struct MotifArgs {
    /// Signed CSV file; shorthand for --graph signed:PATH.
    #[arg(long, conflicts_with = "graph")]
    pub signed: Option<PathBuf>,
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "rss+")]
    pub method: String,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub step_ratio: f64,
    #[arg(long)]
    pub diameter: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    /// Comma-separated chain lengths; the bounds scaled by the step ratio when absent.
    #[arg(long)]
    pub steps: Option<String>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Take Δ, D and |V| from a dataset instead of the flags.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, required_unless_present = "graph")]
    pub delta: Option<usize>,
    #[arg(long, required_unless_present = "graph")]
    pub diam: Option<usize>,
    /// Node count.
    #[arg(long, required_unless_present = "graph")]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, default_value = "all")]
    pub method: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Args)]
pub struct RerunArgs {
    /// A file written by ksub.
    pub file: PathBuf,
    /// Compare the regenerated output with the file instead of writing it.
    #[arg(long)]
    pub check: bool,
    /// Output file for the regenerated run; the recorded path when absent.
    #[arg(long, conflicts_with = "check")]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

/// Speed-only settings, kept out of the manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecOptions {
    pub jobs: usize,
    pub cache: CacheLevels,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            jobs: 1,
            cache: CacheLevels::Auto,
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    let v = s
        .split(',')
        .map(|p| p.trim().parse::<T>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::usage(format!("{what} {s:?}: expected a comma-separated list")))?;
    if v.is_empty() {
        return Err(Error::usage(format!("{what}: empty list")));
    }
    Ok(v)
}

fn format_or(f: &Option<String>, default: Format) -> Result<Format> {
    f.as_deref().map_or(Ok(default), str::parse)
}

fn path_string(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

impl SamplerArgs {
    fn fill(&self, m: &mut RunManifest) {
        m.graph = Some(self.graph.clone());
        m.k = Some(self.k);
        m.method = Some(self.method.clone());
        m.epsilon = self.eps;
        m.seed = self.seed;
        m.step_ratio = self.step_ratio;
        m.diameter = self.diameter;
        m.max_steps = self.max_steps;
        m.rejection_cap = self.rejection_cap;
        m.psrw_redraw_steps = self.psrw_redraw_steps;
    }
}

impl RunArgs {
    fn fill(&self, m: &mut RunManifest) {
        m.out = path_string(&self.out);
        m.wall_time = !self.no_wall_time;
    }

    fn exec(&self) -> Result<ExecOptions> {
        if self.jobs == 0 {
            return Err(Error::usage("--jobs must be at least 1"));
        }
        Ok(ExecOptions {
            jobs: self.jobs,
            cache: self.cache_levels.parse()?,
        })
    }
}

/// Turns parsed flags into a manifest plus speed settings.
pub fn manifest_of(cmd: &Command) -> Result<(RunManifest, ExecOptions)> {
    let (m, exec) = match cmd {
        Command::Sample(a) => {
            let mut m =
                RunManifest::new(Subcommand::Sample, format_or(&a.run.format, Format::Jsonl)?);
            a.sampler.fill(&mut m);
            a.run.fill(&mut m);
            m.n = Some(a.n);
            (m, a.run.exec()?)
        }
        Command::Enumerate(a) => {
            let mut m = RunManifest::new(Subcommand::Enumerate, Format::Json);
            m.graph = Some(a.graph.clone());
            m.k = Some(a.k);
            m.max_states = Some(a.max_states);
            m.out = path_string(&a.out);
            (m, ExecOptions::default())
        }
        Command::Uniformity(a) => {
            let mut m = RunManifest::new(
                Subcommand::Uniformity,
                format_or(&a.run.format, Format::Csv)?,
            );
            a.sampler.fill(&mut m);
            a.run.fill(&mut m);
            m.runs = Some(a.runs);
            m.n = a.n;
            (m, a.run.exec()?)
        }
        Command::Sweep(a) => {
            let mut m = RunManifest::new(Subcommand::Sweep, format_or(&a.run.format, Format::Csv)?);
            a.sampler.fill(&mut m);
            a.run.fill(&mut m);
            m.runs = Some(a.runs);
            m.n = a.n;
            m.ratios = Some(parse_list(&a.ratios, "--ratios")?);
            (m, a.run.exec()?)
        }
        Command::Bench(a) => {
            let mut m = RunManifest::new(Subcommand::Bench, format_or(&a.format, Format::Csv)?);
            m.graph = Some(a.graph.clone());
            m.k = Some(a.k);
            m.method = Some(a.method.clone());
            m.epsilon = a.eps;
            m.seed = a.seed;
            m.step_ratio = a.step_ratio;
            m.diameter = a.diameter;
            m.reps = Some(a.reps);
            m.measure_steps = Some(a.measure_steps);
            m.out = path_string(&a.out);
            (m, ExecOptions::default())
        }
        Command::Motifs(a) => {
            let mut m =
                RunManifest::new(Subcommand::Motifs, format_or(&a.run.format, Format::Csv)?);
            m.graph = match (&a.signed, &a.graph) {
                (Some(p), _) => Some(format!("signed:{}", p.display())),
                (None, Some(g)) => Some(g.clone()),
                (None, None) => return Err(Error::usage("motifs needs --signed or --graph")),
            };
            m.k = Some(a.k);
            m.method = Some(a.method.clone());
            m.epsilon = a.eps;
            m.seed = a.seed;
            m.step_ratio = a.step_ratio;
            m.diameter = a.diameter;
            m.n = Some(a.n);
            m.steps = a
                .steps
                .as_deref()
                .map(|s| parse_list(s, "--steps"))
                .transpose()?;
            a.run.fill(&mut m);
            (m, a.run.exec()?)
        }
        Command::Bounds(a) => {
            let mut m = RunManifest::new(Subcommand::Bounds, format_or(&a.format, Format::Csv)?);
            m.graph = a.graph.clone();
            m.k = Some(a.k);
            m.method = Some(a.method.clone());
            m.epsilon = a.eps;
            m.delta = a.delta;
            m.diameter = a.diam;
            m.n = a.n;
            m.out = path_string(&a.out);
            (m, ExecOptions::default())
        }
        Command::Rerun(_) => return Err(Error::usage("rerun has no manifest of its own")),
    };
    validate(&m)?;
    Ok((m, exec))
}

fn methods_of(m: &RunManifest) -> Result<Vec<Method>> {
    let token = m.method.as_deref().unwrap_or("all");
    if token == "all" && matches!(m.subcommand, Subcommand::Bench | Subcommand::Bounds) {
        return Ok(Method::ALL.to_vec());
    }
    Ok(vec![token
        .parse::<Method>()
        .map_err(|e| Error::usage(e.to_string()))?])
}

/// Flag-level checks; nothing is loaded or computed.
pub fn validate(m: &RunManifest) -> Result<()> {
    let k = m.k.ok_or_else(|| Error::usage("--k is required"))?;
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::usage(format!("--k must lie in 2..={MAX_K}")));
    }
    if let Some(g) = &m.graph {
        g.parse::<DatasetSpec>()?;
    }
    let methods = if m.subcommand == Subcommand::Enumerate {
        Vec::new()
    } else {
        methods_of(m)?
    };
    let bounds_only = m.subcommand == Subcommand::Bounds;
    if bounds_only {
        if !(m.epsilon > 0.0 && m.epsilon <= 1.0) {
            return Err(Error::usage("--eps must lie in (0, 1]"));
        }
    } else if m.subcommand != Subcommand::Enumerate {
        m.sampler_config()
            .validate()
            .map_err(|e| Error::usage(e.to_string()))?;
        for method in &methods {
            if k < method.min_k() {
                return Err(Error::usage(format!(
                    "{method} needs k >= {}",
                    method.min_k()
                )));
            }
        }
    }
    if m.n == Some(0) {
        return Err(Error::usage("--n must be positive"));
    }
    if m.runs == Some(0) {
        return Err(Error::usage("--runs must be positive"));
    }
    if m.reps == Some(0) || m.measure_steps == Some(0) {
        return Err(Error::usage("--reps and --measure-steps must be positive"));
    }
    if let Some(r) = &m.ratios {
        if r.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::usage("every ratio must lie in [0, 1]"));
        }
    }
    let formats: &[Format] = match m.subcommand {
        Subcommand::Sample => &[Format::Jsonl, Format::Json],
        Subcommand::Enumerate => &[Format::Json],
        _ => &[Format::Csv, Format::Json],
    };
    if !formats.contains(&m.format) {
        return Err(Error::usage(format!(
            "{} does not write {}",
            m.subcommand.name(),
            m.format
        )));
    }
    match m.subcommand {
        Subcommand::Motifs if k != 3 && k != 4 => {
            return Err(Error::usage("motifs needs k = 3 or k = 4"))
        }
        Subcommand::Bounds
            if m.graph.is_none()
                && (m.delta == Some(0) || m.diameter == Some(0) || m.n.is_none()) =>
        {
            return Err(Error::usage("--delta, --diam and --n must be positive"));
        }
        _ => {}
    }
    if m.graph.is_none() && m.subcommand != Subcommand::Bounds {
        return Err(Error::usage("--graph is required"));
    }
    Ok(())
}

fn open_out(path: Option<&str>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::io(p, e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct SampleOut<'a> {
    #[serde(flatten)]
    record: &'a SampleRecord,
    step_ratio: f64,
}

#[derive(Serialize)]
struct UniformityRow {
    run: String,
    seed: u64,
    step_ratio: f64,
    samples: u64,
    states: usize,
    loss: f64,
    steps: Option<u64>,
    rejections: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ns: Option<u64>,
}

#[derive(Serialize)]
struct BoundRow {
    method: String,
    k: usize,
    delta: usize,
    diameter: usize,
    nodes: usize,
    epsilon: f64,
    ln_value: f64,
    value: f64,
}

fn load(m: &RunManifest) -> Result<Dataset> {
    let spec: DatasetSpec = m.graph.as_deref().unwrap_or_default().parse()?;
    let d = Dataset::load(&spec)?;
    for w in &d.warnings {
        eprintln!("warning: {w}");
    }
    Ok(d)
}

/// Runs a validated manifest, writing to `m.out` or standard output.
pub fn execute(m: &RunManifest, exec: &ExecOptions) -> Result<()> {
    let out = open_out(m.out.as_deref())?;
    execute_to(m, exec, out)
}

/// Runs a manifest and writes the report to `w`.
pub fn execute_to<W: Write>(m: &RunManifest, exec: &ExecOptions, mut w: W) -> Result<()> {
    validate(m)?;
    let k = m.k.unwrap_or_default();
    let cfg = m.sampler_config();
    let methods = match m.subcommand {
        Subcommand::Enumerate => Vec::new(),
        _ => methods_of(m)?,
    };
    match m.subcommand {
        Subcommand::Sample => {
            let d = load(m)?;
            let tables = load_tables(d.graph(), k, &exec.cache)?;
            let s = build_sampler(d.graph(), k, methods[0], cfg, &tables, m.diameter)?;
            let records = draw_samples(&s, m.n.unwrap_or(1), exec.jobs)?;
            let rows: Vec<SampleOut<'_>> = records
                .iter()
                .map(|record| SampleOut {
                    record,
                    step_ratio: m.step_ratio,
                })
                .collect();
            write_rows(&mut w, m, &rows)?;
        }
        Subcommand::Enumerate => {
            let d = load(m)?;
            let sg =
                enumerate_states_capped(d.graph(), k, m.max_states.unwrap_or(DEFAULT_STATE_CAP))?;
            let diameter = sg.diameter();
            println!("states {}", sg.len());
            println!("edges {}", sg.edge_count());
            match diameter {
                Some(x) => println!("diameter {x}"),
                None => println!("diameter disconnected"),
            }
            if m.out.is_some() {
                write_json(&mut w, m, &StateGraphJson::new(d.graph(), &sg))?;
            }
        }
        Subcommand::Uniformity => {
            let d = load(m)?;
            let opts = UniformityOptions {
                runs: m.runs.unwrap_or(10),
                samples: m.n,
                jobs: exec.jobs,
                cache: exec.cache.clone(),
                diameter: m.diameter,
                wall_time: m.wall_time,
            };
            let s = uniformity_experiment(d.graph(), k, methods[0], cfg, &opts)?;
            eprintln!(
                "{} k={} states={} mean loss {:.5} ± {:.5}",
                s.method, s.k, s.num_states, s.mean_loss, s.std_loss
            );
            if m.format == Format::Json {
                write_json(&mut w, m, &s)?;
            } else {
                let mut rows: Vec<UniformityRow> = s
                    .reports
                    .iter()
                    .map(|r| UniformityRow {
                        run: r.run.to_string(),
                        seed: r.seed,
                        step_ratio: r.step_ratio,
                        samples: r.total,
                        states: r.num_states,
                        loss: r.loss,
                        steps: Some(r.steps),
                        rejections: Some(r.rejections),
                        wall_ns: r.wall_ns,
                    })
                    .collect();
                for (name, loss) in [("mean", s.mean_loss), ("std", s.std_loss)] {
                    let r = &s.reports[0];
                    rows.push(UniformityRow {
                        run: name.into(),
                        seed: r.seed,
                        step_ratio: r.step_ratio,
                        samples: r.total,
                        states: r.num_states,
                        loss,
                        steps: None,
                        rejections: None,
                        wall_ns: r.wall_ns.map(|_| 0),
                    });
                }
                write_rows(&mut w, m, &rows)?;
            }
        }
        Subcommand::Sweep => {
            let d = load(m)?;
            let opts = UniformityOptions {
                runs: m.runs.unwrap_or(1),
                samples: m.n,
                jobs: exec.jobs,
                cache: exec.cache.clone(),
                diameter: m.diameter,
                wall_time: m.wall_time,
            };
            let ratios = m.ratios.clone().unwrap_or_default();
            let points = step_ratio_sweep(d.graph(), k, methods[0], cfg, &ratios, &opts)?;
            write_rows(&mut w, m, &points)?;
        }
        Subcommand::Bench => {
            let d = load(m)?;
            let opts = BenchOptions {
                reps: m.reps.unwrap_or(100),
                measure_steps: m.measure_steps.unwrap_or(100),
                diameter: m.diameter,
                ..BenchOptions::default()
            };
            let rows = methods
                .iter()
                .map(|&method| bench_sampling_time(d.graph(), k, method, cfg, &opts))
                .collect::<Result<Vec<_>>>()?;
            write_rows(&mut w, m, &rows)?;
        }
        Subcommand::Motifs => {
            let d = load(m)?;
            let sg = d.into_signed();
            let opts = MotifOptions {
                samples: m.n.unwrap_or(10_000),
                schedule: m.steps.clone().unwrap_or_default(),
                jobs: exec.jobs,
                cache: exec.cache.clone(),
                diameter: m.diameter,
            };
            let rows = motif_frequency_experiment(&sg, k, methods[0], cfg, &opts)?;
            if sg.zero_only_count() > 0 {
                eprintln!(
                    "note: {} zero-only pairs counted as positive",
                    sg.zero_only_count()
                );
            }
            write_rows(&mut w, m, &rows)?;
        }
        Subcommand::Bounds => {
            let (delta, diam, nodes) = match &m.graph {
                Some(_) => {
                    let d = load(m)?;
                    let s = GraphStats::of(d.graph(), true)?;
                    (s.max_degree, s.diameter.unwrap_or(1), s.n)
                }
                None => (
                    m.delta.unwrap_or(1),
                    m.diameter.unwrap_or(1),
                    m.n.unwrap_or(1) as usize,
                ),
            };
            let b = BoundInputs {
                k,
                delta,
                diam,
                n: nodes,
                epsilon: m.epsilon,
            };
            let rows = methods
                .iter()
                .map(|&method| {
                    let bound = match method {
                        Method::Mcmc => bound_mcmc(&b),
                        Method::Psrw => bound_psrw(&b),
                        Method::Rss => bound_degree_prop(&b),
                        Method::RssPlus => bound_rss_plus(&b),
                    }?;
                    Ok(BoundRow {
                        method: method.token().into(),
                        k,
                        delta,
                        diameter: diam,
                        nodes,
                        epsilon: m.epsilon,
                        ln_value: bound.ln_value,
                        value: bound.ln_value.exp(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            write_rows(&mut w, m, &rows)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Whether `a` and `b` agree outside wall-clock columns and keys.
pub fn same_modulo_timing(a: &str, b: &str) -> bool {
    if a.starts_with(CSV_PREFIX) {
        return same_csv(a, b);
    }
    let mask = |text: &str| -> Option<Vec<serde_json::Value>> {
        let values: std::result::Result<Vec<serde_json::Value>, _> =
            serde_json::Deserializer::from_str(text)
                .into_iter()
                .collect();
        let mut values = values.ok()?;
        values.iter_mut().for_each(strip_timing);
        Some(values)
    };
    match (mask(a), mask(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.retain(|k, _| !is_timing_column(k));
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn same_csv(a: &str, b: &str) -> bool {
    let rows = |text: &str| -> Option<(String, Vec<Vec<String>>)> {
        let (head, body) = text.split_once('\n')?;
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let names: Vec<String> = r.headers().ok()?.iter().map(String::from).collect();
        let keep: Vec<bool> = names.iter().map(|n| !is_timing_column(n)).collect();
        let mut out = vec![names
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(n, _)| n.clone())
            .collect()];
        for rec in r.records() {
            let rec = rec.ok()?;
            out.push(
                rec.iter()
                    .zip(&keep)
                    .filter(|(_, k)| **k)
                    .map(|(c, _)| c.to_string())
                    .collect(),
            );
        }
        Some((head.to_string(), out))
    };
    matches!((rows(a), rows(b)), (Some(x), Some(y)) if x == y)
}

fn rerun(a: &RerunArgs) -> Result<()> {
    let path = a.file.display().to_string();
    let text = std::fs::read_to_string(&a.file).map_err(|e| Error::io(&path, e))?;
    let mut m = read_manifest(&text)?;
    validate(&m)?;
    let exec = ExecOptions {
        jobs: a.jobs.max(1),
        ..ExecOptions::default()
    };
    if a.check {
        let mut buf = Vec::new();
        execute_to(&m, &exec, &mut buf)?;
        let again = String::from_utf8(buf).expect("reports are UTF-8");
        if same_modulo_timing(&text, &again) {
            eprintln!("reproduced {path}");
            return Ok(());
        }
        return Err(Error::Parse {
            line: 0,
            msg: format!("{path} does not match its re-run"),
        });
    }
    if let Some(out) = &a.out {
        m.out = Some(out.display().to_string());
    }
    execute(&m, &exec)
}

/// Parses `args`, runs the command and maps the outcome to an exit code:
/// 0 success, 1 usage error, 2 runtime error.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Rerun(a) => rerun(a),
        cmd => manifest_of(cmd).and_then(|(m, exec)| execute(&m, &exec)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) | Error::Dataset { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
