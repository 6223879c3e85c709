use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use ksub_core::enumerate::enumerate_states_capped;
use ksub_core::{Graph, StateGraph};

use crate::error::{Error, Result};

/// Which state graphs to materialize before sampling.
///
/// Tables only change speed: samplers consume the generator identically with
/// or without them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CacheLevels {
    /// Levels `2, 3, ...` up to `k` while each stays small.
    #[default]
    Auto,
    None,
    List(Vec<usize>),
}

/// State cap per level under [`CacheLevels::Auto`].
pub const AUTO_MAX_STATES: usize = 250_000;
/// Cap on adjacency entries (an a-priori bound) per level under [`CacheLevels::Auto`].
pub const AUTO_MAX_ENTRIES: usize = 20_000_000;

impl FromStr for CacheLevels {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(CacheLevels::Auto),
            "none" => Ok(CacheLevels::None),
            _ => {
                let levels = s
                    .split(',')
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| {
                        Error::usage(format!(
                            "cache levels {s:?}: expected auto, none or a list like 2,3,4"
                        ))
                    })?;
                if levels.iter().any(|&l| l < 2) {
                    return Err(Error::usage("cache levels start at 2"));
                }
                Ok(CacheLevels::List(levels))
            }
        }
    }
}

impl fmt::Display for CacheLevels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheLevels::Auto => f.write_str("auto"),
            CacheLevels::None => f.write_str("none"),
            CacheLevels::List(l) => {
                let parts: Vec<String> = l.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

/// Materializes the requested levels up to `k`. An explicit list is built
/// in full (subject to the global enumeration cap); `auto` stops at the first
/// level that would be too large.
pub fn load_tables(g: &Graph, k: usize, levels: &CacheLevels) -> Result<Vec<Arc<StateGraph>>> {
    let mut out: Vec<Arc<StateGraph>> = Vec::new();
    match levels {
        CacheLevels::None => {}
        CacheLevels::List(l) => {
            for &level in l {
                if level <= k && level < g.node_count() {
                    out.push(Arc::new(ksub_core::enumerate_states(g, level)?));
                }
            }
        }
        CacheLevels::Auto => {
            let delta = g.max_degree();
            // level 2 states are the edges; their adjacency entries are exact
            let mut state_bound = g.edge_count();
            let mut entry_bound: usize = (0..g.node_count() as u32)
                .map(|v| {
                    let d = g.neighbors(v).len();
                    d * d.saturating_sub(1)
                })
                .sum();
            for level in 2..=k.min(g.node_count().saturating_sub(1)) {
                if state_bound > AUTO_MAX_STATES || entry_bound > AUTO_MAX_ENTRIES {
                    break;
                }
                let Ok(t) = enumerate_states_capped(g, level, AUTO_MAX_STATES) else {
                    break;
                };
                // every (level+1)-state is the union across some edge of this level
                state_bound = t.edge_count();
                entry_bound = state_bound
                    .saturating_mul(level + 1)
                    .saturating_mul(level)
                    .saturating_mul(delta);
                out.push(Arc::new(t));
            }
        }
    }
    Ok(out)
}
