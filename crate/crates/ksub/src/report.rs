//! Output files. Every file starts with the [`RunManifest`] that produced it:
//!
//! * CSV: a first line `# manifest: {json}`, then a header row and data rows;
//! * JSON: `{"manifest": {...}, "data": ...}`;
//! * JSON lines: a first line `{"manifest": {...}}`, then one record per line.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CSV_PREFIX: &str = "# manifest: ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Jsonl,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "jsonl" => Ok(Format::Jsonl),
            _ => Err(Error::usage(format!(
                "unknown format {s:?}; expected csv, json or jsonl"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Jsonl => "jsonl",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subcommand {
    Sample,
    Enumerate,
    Uniformity,
    Sweep,
    Bench,
    Motifs,
    Bounds,
}

impl Subcommand {
    pub fn name(&self) -> &'static str {
        match self {
            Subcommand::Sample => "sample",
            Subcommand::Enumerate => "enumerate",
            Subcommand::Uniformity => "uniformity",
            Subcommand::Sweep => "sweep",
            Subcommand::Bench => "bench",
            Subcommand::Motifs => "motifs",
            Subcommand::Bounds => "bounds",
        }
    }
}

/// Everything needed to reproduce a run. Worker count and table caching
/// only affect speed and are not recorded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: Subcommand,
    /// Dataset spec; absent for `bounds` given explicit inputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Sampler token, or `all`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub epsilon: f64,
    pub seed: u64,
    pub step_ratio: f64,
    /// Samples (sample, uniformity, sweep, motifs) or node count (bounds).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure_steps: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_states: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<u64>,
    pub rejection_cap: u64,
    pub psrw_redraw_steps: u64,
    pub wall_time: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub format: Format,
}

impl RunManifest {
    pub fn new(subcommand: Subcommand, format: Format) -> Self {
        let d = ksub_core::SamplerConfig::default();
        RunManifest {
            tool: "ksub".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand,
            graph: None,
            k: None,
            method: None,
            epsilon: d.epsilon,
            seed: d.seed,
            step_ratio: d.step_ratio,
            n: None,
            runs: None,
            diameter: None,
            delta: None,
            ratios: None,
            steps: None,
            reps: None,
            measure_steps: None,
            max_states: None,
            max_steps: d.max_steps,
            rejection_cap: d.rejection_cap,
            psrw_redraw_steps: d.psrw_redraw_steps,
            wall_time: true,
            out: None,
            format,
        }
    }

    pub fn sampler_config(&self) -> ksub_core::SamplerConfig {
        ksub_core::SamplerConfig {
            epsilon: self.epsilon,
            seed: self.seed,
            step_ratio: self.step_ratio,
            rejection_cap: self.rejection_cap,
            psrw_redraw_steps: self.psrw_redraw_steps,
            max_steps: self.max_steps,
        }
    }
}

/// Writes `rows` as CSV under a manifest line.
pub fn write_csv<W: Write, R: Serialize>(
    mut w: W,
    manifest: &RunManifest,
    rows: &[R],
) -> Result<()> {
    writeln!(w, "{CSV_PREFIX}{}", serde_json::to_string(manifest)?)?;
    let mut c = csv::Writer::from_writer(w);
    for r in rows {
        c.serialize(r)?;
    }
    c.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Envelope<'a, D> {
    manifest: &'a RunManifest,
    data: D,
}

pub fn write_json<W: Write, D: Serialize>(
    mut w: W,
    manifest: &RunManifest,
    data: &D,
) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, &Envelope { manifest, data })?;
    writeln!(w)?;
    Ok(())
}

#[derive(Serialize)]
struct ManifestLine<'a> {
    manifest: &'a RunManifest,
}

pub fn write_jsonl<W: Write, R: Serialize>(
    mut w: W,
    manifest: &RunManifest,
    rows: &[R],
) -> Result<()> {
    serde_json::to_writer(&mut w, &ManifestLine { manifest })?;
    writeln!(w)?;
    for r in rows {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Rows in the manifest's format; JSON wraps them in a list.
pub fn write_rows<W: Write, R: Serialize>(w: W, manifest: &RunManifest, rows: &[R]) -> Result<()> {
    match manifest.format {
        Format::Csv => write_csv(w, manifest, rows),
        Format::Json => write_json(w, manifest, &rows),
        Format::Jsonl => write_jsonl(w, manifest, rows),
    }
}

/// Reads the manifest back from the start of any output file.
pub fn read_manifest(text: &str) -> Result<RunManifest> {
    let first = text.lines().next().unwrap_or("");
    if let Some(json) = first.strip_prefix(CSV_PREFIX) {
        return Ok(serde_json::from_str(json)?);
    }
    #[derive(Deserialize)]
    struct Head {
        manifest: RunManifest,
    }
    if let Ok(h) = serde_json::from_str::<Head>(first) {
        return Ok(h.manifest);
    }
    #[derive(Deserialize)]
    struct Whole {
        manifest: RunManifest,
        #[allow(dead_code)]
        data: serde::de::IgnoredAny,
    }
    let w: Whole =
        serde_json::from_str(text).map_err(|_| Error::usage("no manifest header found"))?;
    Ok(w.manifest)
}

/// Column names that carry wall-clock measurements.
pub fn is_timing_column(name: &str) -> bool {
    name == "wall_ns"
        || name == "per_sample_ns"
        || name == "measured_samples"
        || name == "measured_steps"
}
