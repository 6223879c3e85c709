use std::ops::RangeInclusive;
use std::path::Path;

use ksub_core::signed::SignedEdge;
use ksub_core::SignedGraph;

use super::{is_comment, read_text};
use crate::error::{Error, Result};

/// Ratings outside this range are kept but reported.
pub const RATING_RANGE: RangeInclusive<i32> = -10..=10;

/// A parsed signed graph plus non-fatal findings.
#[derive(Debug, Clone)]
pub struct SignedLoad {
    pub graph: SignedGraph,
    pub warnings: Vec<String>,
}

/// Parses `SOURCE,TARGET,RATING,TIME` lines into a directed signed graph and
/// its undirected projection.
pub fn load_signed_snap(text: &str) -> Result<SignedLoad> {
    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if is_comment(line) {
            continue;
        }
        let line_no = i + 1;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!(
                    "expected SOURCE,TARGET,RATING,TIME, found {} fields",
                    fields.len()
                ),
            });
        }
        let bad = |name: &str, f: &str| Error::Parse {
            line: line_no,
            msg: format!("{name} {f:?} is not an integer"),
        };
        let source = fields[0].parse().map_err(|_| bad("source", fields[0]))?;
        let target = fields[1].parse().map_err(|_| bad("target", fields[1]))?;
        let rating: i32 = fields[2].parse().map_err(|_| bad("rating", fields[2]))?;
        let time = fields[3].parse().map_err(|_| bad("time", fields[3]))?;
        if !RATING_RANGE.contains(&rating) {
            warnings.push(format!(
                "line {line_no}: rating {rating} outside [-10, 10], kept"
            ));
        }
        edges.push(SignedEdge {
            source,
            target,
            rating,
            time,
        });
    }
    if edges.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no edges".into(),
        });
    }
    let graph = SignedGraph::from_directed(edges)?;
    let zero = graph.zero_only_count();
    if zero > 0 {
        warnings.push(format!(
            "{zero} node pairs carry only zero ratings; treated as positive"
        ));
    }
    Ok(SignedLoad { graph, warnings })
}

pub fn read_signed_snap(path: &Path) -> Result<SignedLoad> {
    load_signed_snap(&read_text(path)?)
}
