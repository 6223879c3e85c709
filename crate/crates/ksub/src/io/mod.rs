//! Input and output formats.

mod edgelist;
mod signed;
mod state_json;

pub use edgelist::{parse_edge_list, read_edge_list};
pub use signed::{load_signed_snap, read_signed_snap, SignedLoad, RATING_RANGE};
pub use state_json::StateGraphJson;

use std::path::Path;

use crate::error::{Error, Result};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Lines that carry no data: blank, or starting with `#` or `%`.
pub(crate) fn is_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#') || t.starts_with('%')
}
