use std::path::Path;

use ksub_core::Graph;

use super::{is_comment, read_text};
use crate::error::{Error, Result};

/// Parses an undirected edge list: one `u v` pair of integer ids per line,
/// separated by whitespace or a comma. Extra columns are ignored; `#` and `%`
/// start comment lines. Self-loops and repeated pairs are dropped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if is_comment(line) {
            continue;
        }
        let mut fields = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty());
        let mut id = |what: &str| -> Result<u64> {
            let f = fields.next().ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("missing {what} node"),
            })?;
            f.parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("{what} node {f:?} is not a non-negative integer"),
            })
        };
        let u = id("source")?;
        let v = id("target")?;
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no edges".into(),
        });
    }
    Ok(Graph::from_edges(edges)?)
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    parse_edge_list(&read_text(path)?)
}
