//! Half-L1 distance between an empirical sample distribution and the uniform one.

use crate::{Error, Result};

/// `½ Σ_v |N_v / N_s − 1/|V^(k)||` over all `num_states` states.
///
/// `counts` holds the tallies of the states that were seen (in any order);
/// states that were never sampled contribute their full `1/num_states`.
pub fn loss<I>(counts: I, total: u64, num_states: usize) -> Result<f64>
where
    I: IntoIterator<Item = u64>,
{
    if num_states == 0 {
        return Err(Error::InvalidConfig("loss needs at least one state"));
    }
    if total == 0 {
        return Err(Error::InvalidConfig("loss needs at least one sample"));
    }
    let u = 1.0 / num_states as f64;
    let ns = total as f64;
    let mut seen = 0usize;
    let mut sum = 0.0;
    for c in counts {
        if c == 0 {
            continue;
        }
        seen += 1;
        sum += (c as f64 / ns - u).abs();
    }
    if seen > num_states {
        return Err(Error::InvalidConfig("more distinct states than num_states"));
    }
    sum += (num_states - seen) as f64 * u;
    Ok(0.5 * sum)
}
