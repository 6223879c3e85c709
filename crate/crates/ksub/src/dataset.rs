//! Single-string dataset specifications.
//!
//! * `karate`: the embedded karate club graph.
//! * `ba:N:M[:SEED]`: Barabási–Albert graph, generator seed 0 unless given.
//! * `file:PATH`: undirected edge list.
//! * `signed:PATH`: `SOURCE,TARGET,RATING,TIME` signed directed edge list.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use ksub_core::generators::{generate_ba, karate};
use ksub_core::{Graph, SignedGraph};

use crate::error::{Error, Result};
use crate::io::{read_edge_list, read_signed_snap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatasetSpec {
    Karate,
    Ba { n: usize, m: usize, seed: u64 },
    File(PathBuf),
    Signed(PathBuf),
}

impl FromStr for DatasetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Dataset {
            spec: s.to_string(),
            msg: msg.to_string(),
        };
        if s == "karate" {
            return Ok(DatasetSpec::Karate);
        }
        if let Some(rest) = s.strip_prefix("ba:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if !(2..=3).contains(&parts.len()) {
                return Err(bad("expected ba:N:M or ba:N:M:SEED"));
            }
            let n = parts[0].parse().map_err(|_| bad("N is not an integer"))?;
            let m = parts[1].parse().map_err(|_| bad("M is not an integer"))?;
            let seed = match parts.get(2) {
                Some(p) => p.parse().map_err(|_| bad("SEED is not an integer"))?,
                None => 0,
            };
            if m < 1 || n <= m {
                return Err(bad("need N > M >= 1"));
            }
            return Ok(DatasetSpec::Ba { n, m, seed });
        }
        if let Some(p) = s.strip_prefix("file:") {
            if p.is_empty() {
                return Err(bad("empty path"));
            }
            return Ok(DatasetSpec::File(p.into()));
        }
        if let Some(p) = s.strip_prefix("signed:") {
            if p.is_empty() {
                return Err(bad("empty path"));
            }
            return Ok(DatasetSpec::Signed(p.into()));
        }
        Err(bad(
            "expected karate, ba:N:M[:SEED], file:PATH or signed:PATH",
        ))
    }
}

impl fmt::Display for DatasetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatasetSpec::Karate => f.write_str("karate"),
            DatasetSpec::Ba { n, m, seed } => write!(f, "ba:{n}:{m}:{seed}"),
            DatasetSpec::File(p) => write!(f, "file:{}", p.display()),
            DatasetSpec::Signed(p) => write!(f, "signed:{}", p.display()),
        }
    }
}

/// A loaded dataset. Signed inputs keep their raw ratings next to the projection.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub spec: DatasetSpec,
    graph: Option<Graph>,
    signed: Option<SignedGraph>,
    pub warnings: Vec<String>,
}

impl Dataset {
    pub fn load(spec: &DatasetSpec) -> Result<Self> {
        let mut warnings = Vec::new();
        let (graph, signed) = match spec {
            DatasetSpec::Karate => (Some(karate()), None),
            DatasetSpec::Ba { n, m, seed } => (Some(generate_ba(*n, *m, *seed)?), None),
            DatasetSpec::File(p) => (Some(read_edge_list(p)?), None),
            DatasetSpec::Signed(p) => {
                let load = read_signed_snap(p)?;
                warnings = load.warnings;
                (None, Some(load.graph))
            }
        };
        Ok(Dataset {
            spec: spec.clone(),
            graph,
            signed,
            warnings,
        })
    }

    /// The undirected graph (the projection for signed inputs).
    pub fn graph(&self) -> &Graph {
        match (&self.graph, &self.signed) {
            (Some(g), _) => g,
            (None, Some(s)) => s.graph(),
            (None, None) => unreachable!("dataset holds a graph"),
        }
    }

    pub fn signed(&self) -> Option<&SignedGraph> {
        self.signed.as_ref()
    }

    /// The signed graph, or the unsigned graph with every edge positive.
    pub fn into_signed(self) -> SignedGraph {
        match (self.graph, self.signed) {
            (_, Some(s)) => s,
            (Some(g), None) => SignedGraph::all_positive(g),
            (None, None) => unreachable!("dataset holds a graph"),
        }
    }
}
